//! Independent tree-pair model of Thompson's group F, used as an oracle
//! against the diagram engine. An element is a reduced pair of finite
//! binary trees with equally many leaves; multiplication refines the
//! middle trees to a common expansion. Nothing here touches the diagram
//! code: the only shared vocabulary is the generator names.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Smallest common expansion of two trees.
    fn join(a: &Tree, b: &Tree) -> Tree {
        match (a, b) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Node(al, ar), Tree::Node(bl, br)) => {
                Tree::node(Tree::join(al, bl), Tree::join(ar, br))
            }
        }
    }

    /// For `self` a prefix of `expansion`: the subtree grafted at each of
    /// self's leaves, in leaf order.
    fn grafts<'a>(&self, expansion: &'a Tree, out: &mut Vec<&'a Tree>) {
        match (self, expansion) {
            (Tree::Leaf, t) => out.push(t),
            (Tree::Node(sl, sr), Tree::Node(el, er)) => {
                sl.grafts(el, out);
                sr.grafts(er, out);
            }
            _ => panic!("not an expansion"),
        }
    }

    /// Graft `subs[i]` at leaf i.
    fn graft(&self, subs: &[&Tree], next: &mut usize) -> Tree {
        match self {
            Tree::Leaf => {
                let t = subs[*next].clone();
                *next += 1;
                t
            }
            Tree::Node(l, r) => {
                let gl = l.graft(subs, next);
                let gr = r.graft(subs, next);
                Tree::node(gl, gr)
            }
        }
    }

    /// Leaf index ranges of every cherry (caret over two leaves).
    fn cherries(&self, base: usize, out: &mut Vec<usize>) -> usize {
        match self {
            Tree::Leaf => base + 1,
            Tree::Node(l, r) => {
                if matches!(**l, Tree::Leaf) && matches!(**r, Tree::Leaf) {
                    out.push(base);
                    base + 2
                } else {
                    let mid = l.cherries(base, out);
                    r.cherries(mid, out)
                }
            }
        }
    }

    /// Remove the caret whose two leaves are at indices i, i+1.
    fn drop_cherry(&self, at: usize, next: &mut usize) -> Tree {
        match self {
            Tree::Leaf => {
                *next += 1;
                Tree::Leaf
            }
            Tree::Node(l, r) => {
                if matches!(**l, Tree::Leaf) && matches!(**r, Tree::Leaf) && *next == at {
                    *next += 2;
                    Tree::Leaf
                } else {
                    let gl = l.drop_cherry(at, next);
                    let gr = r.drop_cherry(at, next);
                    Tree::node(gl, gr)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    pub dom: Tree,
    pub ran: Tree,
}

impl TreePair {
    pub fn identity() -> TreePair {
        TreePair {
            dom: Tree::Leaf,
            ran: Tree::Leaf,
        }
    }

    pub fn new_reduced(dom: Tree, ran: Tree) -> TreePair {
        assert_eq!(dom.leaves(), ran.leaves());
        let mut p = TreePair { dom, ran };
        p.reduce();
        p
    }

    fn reduce(&mut self) {
        loop {
            let mut dc = Vec::new();
            let mut rc = Vec::new();
            self.dom.cherries(0, &mut dc);
            self.ran.cherries(0, &mut rc);
            let common = dc.iter().find(|i| rc.contains(i)).copied();
            match common {
                Some(i) => {
                    let mut n = 0;
                    self.dom = self.dom.drop_cherry(i, &mut n);
                    let mut n = 0;
                    self.ran = self.ran.drop_cherry(i, &mut n);
                }
                None => break,
            }
        }
    }

    pub fn inverse(&self) -> TreePair {
        TreePair {
            dom: self.ran.clone(),
            ran: self.dom.clone(),
        }
    }

    /// Product `self * other`: refine so this range equals the other
    /// domain, glue, and reduce.
    pub fn multiply(&self, other: &TreePair) -> TreePair {
        let mid = Tree::join(&self.ran, &other.dom);
        // grafts turning self.ran into mid, applied to self.dom
        let mut gr = Vec::new();
        self.ran.grafts(&mid, &mut gr);
        let mut next = 0;
        let dom = self.dom.graft(&gr, &mut next);
        // grafts turning other.dom into mid, applied to other.ran
        let mut gr = Vec::new();
        other.dom.grafts(&mid, &mut gr);
        let mut next = 0;
        let ran = other.ran.graft(&gr, &mut next);
        TreePair::new_reduced(dom, ran)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == Tree::Leaf && self.ran == Tree::Leaf
    }

    /// x0: domain caret pattern (x(xx)), range ((xx)x).
    pub fn x0() -> TreePair {
        TreePair::new_reduced(
            Tree::node(Tree::Leaf, Tree::node(Tree::Leaf, Tree::Leaf)),
            Tree::node(Tree::node(Tree::Leaf, Tree::Leaf), Tree::Leaf),
        )
    }

    /// x1: one caret, then x0 grown on the left child.
    pub fn x1() -> TreePair {
        TreePair::new_reduced(
            Tree::node(
                Tree::node(Tree::Leaf, Tree::node(Tree::Leaf, Tree::Leaf)),
                Tree::Leaf,
            ),
            Tree::node(
                Tree::node(Tree::node(Tree::Leaf, Tree::Leaf), Tree::Leaf),
                Tree::Leaf,
            ),
        )
    }

    /// Evaluate a word over generator indices: positive k for x_k,
    /// negative for the inverse.
    pub fn eval(word: &[i32]) -> TreePair {
        let gens = [TreePair::x0(), TreePair::x1()];
        let mut acc = TreePair::identity();
        for &g in word {
            let f = if g > 0 {
                gens[(g - 1) as usize].clone()
            } else {
                gens[(-g - 1) as usize].inverse()
            };
            acc = acc.multiply(&f);
        }
        acc
    }
}
