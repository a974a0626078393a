//! Sum decomposition of spherical diagrams, absolute reducedness, and
//! cyclic reduction to an absolutely reduced conjugate.

use super::{swap_adjacent, Diagram, DiagramError, Step, Word};

/// One summand of a spherical diagram: a single-letter trivial edge or an
/// indecomposable spherical sub-diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Trivial(Word),
    Spherical(Diagram),
}

impl Diagram {
    /// Maximal decomposition of a spherical diagram into trivial edges and
    /// spherical summands. A base-word boundary splits the diagram when no
    /// step's factor ever crosses it and it returns to its starting
    /// position (a drifting boundary would cut the diagram into summands
    /// that are not spherical, which the canonical decomposition into
    /// trivial-or-spherical summands does not use). Cell-free windows
    /// split further into one trivial edge per letter.
    pub fn sum_decompose(&self) -> Result<Vec<Component>, DiagramError> {
        if !self.is_spherical() {
            return Err(DiagramError::NotSpherical {
                top: self.pres.alphabet().format_word(&self.top),
                bottom: self.pres.alphabet().format_word(&self.bottom),
            });
        }
        let base_len = self.top.len();
        // cursors[b] = current position of boundary b (None once crossed)
        let all: Vec<usize> = (0..=base_len).collect();
        let mut cursors: Vec<Option<usize>> = all.iter().map(|&b| Some(b)).collect();
        // per-step window assignment comes later; first find survivors
        for s in &self.steps {
            let (l, _r) = self.pres.step_lens(s);
            let (o, l) = (s.offset as usize, l as usize);
            let delta = self.pres.step_dst(s).len() as isize - l as isize;
            for c in cursors.iter_mut() {
                if let Some(p) = c {
                    if o + l <= *p {
                        *p = (*p as isize + delta) as usize;
                    } else if o < *p {
                        // o < p < o + l: crossed
                        *c = None;
                    }
                }
            }
        }
        let survivors: Vec<usize> = (0..=base_len)
            .filter(|&b| cursors[b] == Some(b))
            .collect();
        debug_assert!(survivors.contains(&0) && survivors.contains(&base_len));
        // windows between consecutive survivors
        let windows: Vec<(usize, usize)> = survivors.windows(2).map(|w| (w[0], w[1])).collect();
        // assign steps to windows, tracking the live position of every
        // surviving boundary through the replay
        let mut live: Vec<usize> = survivors.clone();
        let mut per_window: Vec<Vec<Step>> = vec![Vec::new(); windows.len()];
        for s in &self.steps {
            let (l, _r) = self.pres.step_lens(s);
            let (o, l) = (s.offset as usize, l as usize);
            let delta = self.pres.step_dst(s).len() as isize - l as isize;
            // the window is the last live boundary <= o
            let idx = match live.binary_search(&o) {
                Ok(i) => i,
                Err(i) => i - 1,
            };
            let idx = idx.min(windows.len() - 1);
            debug_assert!(o >= live[idx] && o + l <= live[idx + 1]);
            per_window[idx].push(Step {
                offset: (o - live[idx]) as u32,
                ..*s
            });
            for p in live.iter_mut() {
                if o + l <= *p && o < *p {
                    *p = (*p as isize + delta) as usize;
                }
            }
        }
        let mut out = Vec::new();
        for (w, steps) in windows.iter().zip(per_window) {
            let word = Word::from_lits(self.top.lits()[w.0..w.1].to_vec());
            if steps.is_empty() {
                for lit in word.lits() {
                    out.push(Component::Trivial(Word::from_lits(vec![*lit])));
                }
            } else {
                let sub = Diagram::from_steps(&self.pres, word, steps)?;
                debug_assert!(sub.is_spherical());
                out.push(Component::Spherical(sub));
            }
        }
        Ok(out)
    }

    /// Whether all composition powers up to `depth` stay reduced.
    pub fn is_absolutely_reduced(&self, depth: u32) -> Result<bool, DiagramError> {
        if !self.is_spherical() {
            return Err(DiagramError::NotSpherical {
                top: self.pres.alphabet().format_word(&self.top),
                bottom: self.pres.alphabet().format_word(&self.bottom),
            });
        }
        if !self.is_reduced() {
            return Ok(false);
        }
        let mut power = self.clone();
        for _ in 2..=depth {
            power = power.compose(self)?;
            if !power.is_reduced() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Tests whether all raw composition powers up to `depth` are
    /// dipole-free.
    fn powers_reduced(&self, depth: u32) -> bool {
        let m = self.steps.len();
        if m == 0 {
            return true;
        }
        let mut steps = self.steps.clone();
        for _ in 2..=depth {
            steps.extend_from_slice(&self.steps);
            if self.find_dipole(&steps).is_some() {
                return false;
            }
        }
        true
    }

    /// Rotates one bottom-accessible step to the top: self = T o t becomes
    /// t o T, a conjugation by the one-cell diagram of t. Returns the
    /// rotated diagram (reduced) and that conjugator.
    fn rotate_bottom_step(&self, index: usize) -> Option<(Diagram, Diagram)> {
        let m = self.steps.len();
        let mut steps = self.steps.clone();
        let mut pos = index;
        while pos + 1 < m {
            let (b2, a2) = swap_adjacent(&self.pres, &steps[pos], &steps[pos + 1])?;
            steps[pos] = b2;
            steps[pos + 1] = a2;
            pos += 1;
        }
        let tail = steps.pop().expect("nonempty");
        let before_tail = super::replay(&self.pres, &self.top, &steps).ok()?;
        let gamma = Diagram::from_steps(&self.pres, before_tail.clone(), vec![tail]).ok()?;
        let mut rotated = vec![tail];
        rotated.extend(steps);
        let next = Diagram::from_steps(&self.pres, before_tail, rotated)
            .ok()?
            .reduce();
        Some((next, gamma))
    }

    /// Rotates one top-accessible step to the bottom; the conjugator is
    /// the inverse of the step's one-cell diagram.
    fn rotate_top_step(&self, index: usize) -> Option<(Diagram, Diagram)> {
        let mut steps = self.steps.clone();
        let mut pos = index;
        while pos > 0 {
            let (b2, a2) = swap_adjacent(&self.pres, &steps[pos - 1], &steps[pos])?;
            steps[pos - 1] = b2;
            steps[pos] = a2;
            pos -= 1;
        }
        let head = steps.remove(0);
        let gamma_h = Diagram::from_steps(&self.pres, self.top.clone(), vec![head]).ok()?;
        let after_head = gamma_h.bottom().clone();
        let mut rotated = steps;
        rotated.push(head);
        let next = Diagram::from_steps(&self.pres, after_head, rotated)
            .ok()?
            .reduce();
        Some((next, gamma_h.inverse()))
    }

    /// Conjugates a spherical diagram to an absolutely reduced one
    /// (validated through composition powers up to depth 4). Stripping a
    /// dipole from a power removes at least two cells; when the offending
    /// cells are separated by whole copies, the seam is first slid by
    /// cell-count-preserving rotations (a bounded deterministic search).
    /// Returns `(reduced, gamma)` with
    /// `self = reduce(gamma^-1 o reduced o gamma)`.
    pub fn cyclic_reduce(&self) -> Result<(Diagram, Diagram), DiagramError> {
        const STRIP_DEPTH: u32 = 4;
        const SEARCH_LIMIT: usize = 4096;
        if !self.is_spherical() {
            return Err(DiagramError::NotSpherical {
                top: self.pres.alphabet().format_word(&self.top),
                bottom: self.pres.alphabet().format_word(&self.bottom),
            });
        }
        let mut cur = self.reduce();
        let mut gamma = Diagram::trivial(&self.pres, &self.top)?;
        'descend: loop {
            if cur.powers_reduced(STRIP_DEPTH) {
                break;
            }
            // breadth-first over rotations that keep the cell count,
            // looking for any state that loses cells after reduction
            let mut visited: std::collections::HashSet<Diagram> = std::collections::HashSet::new();
            let mut queue: std::collections::VecDeque<(Diagram, Diagram)> =
                std::collections::VecDeque::new();
            visited.insert(cur.clone());
            queue.push_back((cur.clone(), Diagram::trivial(&self.pres, cur.top())?));
            while let Some((d, g)) = queue.pop_front() {
                let m = d.cells();
                let moves = (0..m)
                    .map(|i| (i, false))
                    .chain((0..m).map(|i| (i, true)));
                for (i, from_top) in moves {
                    let rotated = if from_top {
                        d.rotate_top_step(i)
                    } else {
                        d.rotate_bottom_step(i)
                    };
                    let Some((next, step_gamma)) = rotated else {
                        continue;
                    };
                    let g2 = step_gamma.compose(&g)?.reduce();
                    if next.cells() < cur.cells() {
                        gamma = g2.compose(&gamma)?.reduce();
                        cur = next;
                        continue 'descend;
                    }
                    if visited.len() < SEARCH_LIMIT && visited.insert(next.clone()) {
                        queue.push_back((next, g2));
                    }
                }
            }
            // no descent anywhere in the bounded rotation component
            return Err(DiagramError::CyclicReductionStalled);
        }
        Ok((cur, gamma))
    }
}
