//! BS(1,n) = <a,b | b^-1 a b = a^n> modeled as Z[1/n] ⋊ Z.
//!
//! An element is a pair (q, s) with q in Z[1/n] and s the b-exponent,
//! multiplying by `(q,s)(q',s') = (q + n^-s q', s+s')`; then a = (1,0),
//! b = (0,1) satisfy the defining relation. q is stored as `num * n^exp`
//! with num not divisible by n (num = 0 forces exp = 0), which is the
//! exact constant-size normal form.

use crate::engine::Group;
use crate::int::{pow_u, Int};

use std::marker::PhantomData;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bs1nElement<I: Int> {
    pub num: I,
    pub exp: i64,
    pub shift: i64,
}

/// Conjugacy invariant. For s = 0 the class of (q, 0) is the orbit of q
/// under multiplication by n^±1, pinned by the n-free part of q. For
/// s != 0 the class is determined by s together with the orbit of q's
/// image in Z/M under multiplication by n, where M = n^|s| - 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bs1nConjKey<I: Int> {
    Kernel(I),
    Shifted { shift: i64, orbit_min: I },
}

pub struct Bs1nGroup<I: Int> {
    n: u32,
    _scalar: PhantomData<I>,
}

impl<I: Int> Bs1nGroup<I> {
    /// Base parameter n >= 2.
    pub fn new(n: u32) -> Self {
        assert!(n >= 2, "BS(1,n) needs n >= 2");
        Bs1nGroup {
            n,
            _scalar: PhantomData,
        }
    }

    pub fn base(&self) -> u32 {
        self.n
    }

    fn base_int(&self) -> I {
        I::from_i64_exact(self.n as i64)
    }

    /// Canonical (num, exp) with n not dividing num.
    fn canon(&self, mut num: I, mut exp: i64) -> (I, i64) {
        if num.is_zero() {
            return (I::zero(), 0);
        }
        let n = self.base_int();
        loop {
            let (q, r) = num.div_rem(&n);
            if r.is_zero() {
                num = q;
                exp += 1;
            } else {
                return (num, exp);
            }
        }
    }

    fn add_q(&self, (n1, e1): (&I, i64), (n2, e2): (&I, i64)) -> (I, i64) {
        if n1.is_zero() {
            return if n2.is_zero() {
                (I::zero(), 0)
            } else {
                (n2.clone(), e2)
            };
        }
        if n2.is_zero() {
            return (n1.clone(), e1);
        }
        let n = self.base_int();
        let e = e1.min(e2);
        let v1 = n1.clone() * pow_u(&n, (e1 - e) as u32);
        let v2 = n2.clone() * pow_u(&n, (e2 - e) as u32);
        self.canon(v1 + v2, e)
    }

    pub fn element(&self, num: i64, exp: i64, shift: i64) -> Bs1nElement<I> {
        let (num, exp) = self.canon(I::from_i64_exact(num), exp);
        Bs1nElement { num, exp, shift }
    }

    pub fn a(&self) -> Bs1nElement<I> {
        self.element(1, 0, 0)
    }

    pub fn b(&self) -> Bs1nElement<I> {
        self.element(0, 0, 1)
    }

    /// a^k as an element.
    pub fn power_of_a(&self, k: i64) -> Bs1nElement<I> {
        self.element(k, 0, 0)
    }

    /// Upper bound on |a^k| from the base-n digit representation
    /// `k = m_1 n^{t_1} + ... + m_s`: each nonzero digit m at position t
    /// costs 2t + m letters.
    pub fn power_length_bound(&self, k: u64) -> u64 {
        assert!(k >= 1);
        let n = self.n as u64;
        let mut bound = 0;
        let mut rest = k;
        let mut t = 0u64;
        while rest > 0 {
            let digit = rest % n;
            if digit > 0 {
                bound += 2 * t + digit;
            }
            rest /= n;
            t += 1;
        }
        bound
    }

    pub fn key(&self, e: &Bs1nElement<I>) -> Bs1nConjKey<I> {
        if e.shift == 0 {
            return Bs1nConjKey::Kernel(e.num.clone());
        }
        let asz = e.shift.unsigned_abs() as u32;
        let n = self.base_int();
        let modulus = pow_u(&n, asz) - I::one();
        if modulus.is_one() {
            return Bs1nConjKey::Shifted {
                shift: e.shift,
                orbit_min: I::zero(),
            };
        }
        // q mod M: n is invertible mod M with n^|s| = 1, so a negative
        // exponent reduces mod |s|.
        let e_red = e.exp.rem_euclid(asz as i64) as u32;
        let mut cur = (e.num.mod_floor(&modulus) * pow_u(&n, e_red)).mod_floor(&modulus);
        let mut orbit_min = cur.clone();
        for _ in 1..asz {
            cur = (cur * n.clone()).mod_floor(&modulus);
            if cur < orbit_min {
                orbit_min = cur.clone();
            }
        }
        Bs1nConjKey::Shifted {
            shift: e.shift,
            orbit_min,
        }
    }

    /// q as an exact decimal-free string: integer when exp >= 0, else a
    /// fraction over n^|exp|.
    pub fn q_string(&self, e: &Bs1nElement<I>) -> String {
        let n = self.base_int();
        if e.exp >= 0 {
            format!("{}", e.num.clone() * pow_u(&n, e.exp as u32))
        } else {
            format!("{}/{}", e.num, pow_u(&n, (-e.exp) as u32))
        }
    }
}

impl<I: Int> Group for Bs1nGroup<I> {
    type Elem = Bs1nElement<I>;
    type ConjKey = Bs1nConjKey<I>;

    fn identity(&self) -> Self::Elem {
        Bs1nElement {
            num: I::zero(),
            exp: 0,
            shift: 0,
        }
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // (q,s)(q',s') = (q + n^-s q', s+s')
        let (num, exp) = self.add_q((&a.num, a.exp), (&b.num, b.exp - a.shift));
        Bs1nElement {
            num,
            exp,
            shift: a.shift + b.shift,
        }
    }

    fn invert(&self, a: &Self::Elem) -> Self::Elem {
        // (q,s)^-1 = (-n^s q, -s)
        let (num, exp) = self.canon(-a.num.clone(), a.exp + a.shift);
        Bs1nElement {
            num,
            exp,
            shift: -a.shift,
        }
    }

    fn generators(&self) -> Vec<(String, Self::Elem)> {
        vec![
            ("a".into(), self.a()),
            ("a'".into(), self.invert(&self.a())),
            ("b".into(), self.b()),
            ("b'".into(), self.invert(&self.b())),
        ]
    }

    fn conjugacy_key(&self, e: &Self::Elem) -> Option<Self::ConjKey> {
        Some(self.key(e))
    }

    fn conjugacy_key_complete(&self) -> bool {
        true
    }

    fn display(&self, e: &Self::Elem) -> String {
        format!("({},{})", self.q_string(e), e.shift)
    }
}
