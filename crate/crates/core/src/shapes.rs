//! Conjugacy classes of subsets of `S` ("shapes") and the shape of an element.

use crate::coxeter::CoxeterSystem;
use crate::subset::{power_set, Subset};

/// One equivalence class of subsets under `W`-conjugacy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub class_id: usize,
    /// Members in increasing mask order.
    pub members: Vec<Subset>,
    /// Lexicographically minimal member (compared as sorted index lists).
    pub canonical: Subset,
    pub cardinality_of_member: usize,
}

/// The partition of the power set of `S` into shapes.
#[derive(Debug, Clone)]
pub struct ShapeClasses {
    classes: Vec<Shape>,
    class_of: Vec<usize>,
    /// `witness[mask]` conjugates the canonical member of its class onto `mask`.
    witness: Vec<usize>,
    /// `below[a][b]` iff some member of `a` is contained in some member of `b`.
    below: Vec<Vec<bool>>,
}

fn lex_key(s: Subset) -> Vec<usize> {
    s.iter().collect()
}

impl ShapeClasses {
    /// Decides conjugacy of subsets by searching all of `W` for witnesses.
    pub fn compute(w: &CoxeterSystem) -> Self {
        let n = 1usize << w.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..w.order() {
            let defined = Subset::from_indices((0..w.rank()).filter(|&s| w.conjugate_simple(x, s).is_some()));
            for set in defined.subsets() {
                let image = w.conjugate_subset(x, set).expect("defined on subsets of the domain");
                let (a, b) = (find(&mut parent, set.index()), find(&mut parent, image.index()));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<Subset>> = Vec::new();
        let mut root_group = vec![usize::MAX; n];
        for m in 0..n {
            let r = find(&mut parent, m);
            if root_group[r] == usize::MAX {
                root_group[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_group[r]].push(Subset(m as u32));
        }
        let mut classes: Vec<Shape> = groups
            .into_iter()
            .map(|members| {
                let canonical = *members.iter().min_by_key(|s| lex_key(**s)).expect("non-empty class");
                Shape { class_id: 0, cardinality_of_member: canonical.len(), canonical, members }
            })
            .collect();
        classes.sort_by_key(|c| (c.cardinality_of_member, lex_key(c.canonical)));
        let mut class_of = vec![0; n];
        for (id, c) in classes.iter_mut().enumerate() {
            c.class_id = id;
            for m in &c.members {
                class_of[m.index()] = id;
            }
        }

        let mut witness = vec![usize::MAX; n];
        for c in &classes {
            for x in 0..w.order() {
                if let Some(image) = w.conjugate_subset(x, c.canonical) {
                    if witness[image.index()] == usize::MAX {
                        witness[image.index()] = x;
                    }
                }
            }
        }

        let k = classes.len();
        let mut below = vec![vec![false; k]; k];
        for big in power_set(w.rank()) {
            for small in big.subsets() {
                below[class_of[small.index()]][class_of[big.index()]] = true;
            }
        }
        ShapeClasses { classes, class_of, witness, below }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Shape] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &Shape {
        &self.classes[id]
    }

    /// `lambda(I)`.
    pub fn class_of(&self, set: Subset) -> usize {
        self.class_of[set.index()]
    }

    pub fn shape_of(&self, set: Subset) -> &Shape {
        &self.classes[self.class_of(set)]
    }

    /// An element `w` with `w canonical w^-1 = set`.
    pub fn witness(&self, set: Subset) -> usize {
        self.witness[set.index()]
    }

    pub fn equivalent(&self, a: Subset, b: Subset) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    /// The order on shapes induced by inclusion: `lambda(a) ⊂ lambda(b)`.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }
}

/// `Lambda(w)` for every element: the shape of the minimal parabolic subgroup
/// containing `w`.
///
/// Each element is conjugated by simple reflections without increasing its
/// length; within a class of equal-length cyclic shifts, a strictly shorter
/// conjugate sends us to an (already classified) shorter element, and a
/// class with no way down consists of minimal-length elements, whose support
/// gives the shape.
pub fn element_shapes(w: &CoxeterSystem, shapes: &ShapeClasses) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let mut out = vec![UNSET; w.order()];
    let mut class = Vec::new();
    for start in 0..w.order() {
        if out[start] != UNSET {
            continue;
        }
        let len = w.length(start);
        class.clear();
        class.push(start);
        out[start] = UNSET - 1;
        let mut down = None;
        let mut k = 0;
        while k < class.len() {
            let x = class[k];
            for s in 0..w.rank() {
                let y = w.mul_gen(w.gen_mul(s, x), s);
                let ly = w.length(y);
                if ly < len {
                    down.get_or_insert(y);
                } else if ly == len && out[y] == UNSET {
                    out[y] = UNSET - 1;
                    class.push(y);
                }
            }
            k += 1;
        }
        let shape = match down {
            Some(y) => out[y],
            None => shapes.class_of(w.support(start)),
        };
        for &x in &class {
            out[x] = shape;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_has_three_shapes() {
        let w = CoxeterSystem::from_label("A2").unwrap();
        let sh = ShapeClasses::compute(&w);
        assert_eq!(sh.len(), 3);
        assert!(sh.equivalent(Subset::singleton(0), Subset::singleton(1)));
        assert_eq!(sh.class(0).members, vec![Subset::EMPTY]);
        assert_eq!(sh.class(2).members, vec![w.full_set()]);
    }

    #[test]
    fn b2_has_four_shapes() {
        let w = CoxeterSystem::from_label("B2").unwrap();
        assert_eq!(ShapeClasses::compute(&w).len(), 4);
    }

    #[test]
    fn a3_shapes_match_partitions_of_four() {
        let w = CoxeterSystem::from_label("A3").unwrap();
        assert_eq!(ShapeClasses::compute(&w).len(), 5);
    }

    #[test]
    fn witnesses_conjugate_canonical_members() {
        for label in ["D4", "B3", "H3", "A4"] {
            let w = CoxeterSystem::from_label(label).unwrap();
            let sh = ShapeClasses::compute(&w);
            for c in sh.classes() {
                for &m in &c.members {
                    assert_eq!(w.conjugate_subset(sh.witness(m), c.canonical), Some(m));
                }
            }
        }
    }

    #[test]
    fn coxeter_elements_have_full_shape() {
        for label in ["A3", "B4", "H3", "D4"] {
            let w = CoxeterSystem::from_label(label).unwrap();
            let sh = ShapeClasses::compute(&w);
            let el = element_shapes(&w, &sh);
            let c = w.word_to_element(&(0..w.rank()).collect::<Vec<_>>());
            assert_eq!(el[c], sh.class_of(w.full_set()));
            assert_eq!(el[0], sh.class_of(Subset::EMPTY));
        }
    }
}
