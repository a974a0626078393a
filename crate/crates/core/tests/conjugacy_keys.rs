use cgf_core::diagram::*;
use cgf_core::engine::Group;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn stress_key_invariance_and_depth6() {
    let f = thompson_f_group();
    let budget = PClassBudget::default();
    let gens: Vec<_> = f.generators().into_iter().map(|(_, e)| e).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(987);
    let sample = |rng: &mut ChaCha8Rng, len: usize| {
        let mut e = f.identity();
        for _ in 0..rng.gen_range(0..=len) {
            let s = &gens[rng.gen_range(0..gens.len())];
            e = f.multiply(&e, s);
        }
        e
    };
    let mut max_cells = 0;
    for trial in 0..3000 {
        let d = sample(&mut rng, 6);
        let g = sample(&mut rng, 6);
        let conj = g.inverse().group_multiply(&d).unwrap().group_multiply(&g).unwrap();
        max_cells = max_cells.max(conj.cells());
        let kd = diagram_conj_key(&d, &budget).unwrap();
        let kc = diagram_conj_key(&conj, &budget).unwrap();
        assert_eq!(kd, kc, "trial {trial}");
        let (rd, gam) = d.reduce().cyclic_reduce().unwrap();
        assert!(rd.is_absolutely_reduced(6).unwrap(), "depth-6 violation at trial {trial}: {rd:?}");
        let back = gam.inverse().compose(&rd).unwrap().compose(&gam).unwrap().reduce();
        assert_eq!(back, d.reduce(), "conjugation identity at trial {trial}");
    }
    println!("3000 deep F trials ok (max cells {max_cells})");

    // wreath presentation sampled witnesses with conjugation
    let pres = Presentation::wreath_zz();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..500 {
        let nparts = rng.gen_range(1..=3);
        let parts: Vec<u32> = (0..nparts).map(|_| rng.gen_range(1..=3)).collect();
        let w = wreath_zz_witness(&pres, &parts).unwrap();
        let gparts: Vec<u32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=2)).collect();
        let g = wreath_zz_witness(&pres, &gparts).unwrap();
        let conj = g.inverse().group_multiply(&w).unwrap().group_multiply(&g).unwrap();
        let kw = diagram_conj_key(&w, &budget).unwrap();
        let kc = diagram_conj_key(&conj, &budget).unwrap();
        assert_eq!(kw, kc, "wreath trial {trial} parts {parts:?} g {gparts:?}");
    }
    println!("500 wreath conjugation trials ok");
}
