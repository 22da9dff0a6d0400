//! Finite Coxeter systems, fully enumerated as root permutations.

use std::collections::HashMap;
use std::fmt;

use crate::cartan::{classify, validate_matrix, CartanType, Component, Irreducible};
use crate::error::{Error, Result};
use crate::roots::{build_root_permutations, RootPermutations};
use crate::subset::Subset;

/// Default rank cap; rank 8 is refused regardless.
pub const DEFAULT_RANK_CAP: usize = 7;
const HARD_RANK_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub rank_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { rank_cap: DEFAULT_RANK_CAP }
    }
}

/// An element of `W` materialised with its canonical reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub index: usize,
    /// Lexicographically minimal reduced word (0-based generator indices).
    pub word: Vec<usize>,
    pub length: usize,
}

const NONE: u8 = u8::MAX;

/// A finite Coxeter system with every element enumerated.
///
/// Elements are numbered breadth-first by length, ties broken by the
/// lexicographically smallest reduced word; index 0 is the identity and the
/// last index is the longest element.
pub struct CoxeterSystem {
    label: String,
    cartan: CartanType,
    components: Vec<Component>,
    matrix: Vec<Vec<u32>>,
    roots: RootPermutations,
    /// images of the positive roots, `n_pos` bytes per element
    images: Vec<u8>,
    length: Vec<u16>,
    right_asc: Vec<u32>,
    left_asc: Vec<u32>,
    /// `conj[w*rank + s] = t` when `w s w^-1 = t` is simple, else `NONE`
    conj: Vec<u8>,
    right_mul: Vec<u32>,
    left_mul: Vec<u32>,
    inverse: Vec<u32>,
    parent: Vec<u32>,
    last_gen: Vec<u8>,
    index: HashMap<u64, u32>,
    names: Vec<String>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("label", &self.label)
            .field("rank", &self.rank())
            .field("order", &self.order())
            .finish()
    }
}

impl CoxeterSystem {
    /// Builds a system from a Cartan label such as `B4`, `I2(5)` or `A1xA2`.
    pub fn from_label(label: &str) -> Result<Self> {
        Self::from_label_with(label, BuildOptions::default())
    }

    pub fn from_label_with(label: &str, opts: BuildOptions) -> Result<Self> {
        let cartan: CartanType = label.parse()?;
        let rank = cartan.rank();
        check_rank(rank, opts)?;
        let mut sys = Self::from_matrix_with(cartan.coxeter_matrix(), Some(cartan.to_string()), opts)?;
        if let [Irreducible::D(n)] = cartan.0[..] {
            if n >= 2 {
                sys.names = (0..n).map(|g| if g == 1 { "1p".to_string() } else { g.max(1).to_string() }).collect();
            }
        }
        Ok(sys)
    }

    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<Self> {
        Self::from_matrix_with(matrix, None, BuildOptions::default())
    }

    /// Builds a system from an explicit Coxeter matrix. When no label is given
    /// one is derived from the classification of the matrix.
    pub fn from_matrix_with(matrix: Vec<Vec<u32>>, label: Option<String>, opts: BuildOptions) -> Result<Self> {
        validate_matrix(&matrix)?;
        let rank = matrix.len();
        check_rank(rank, opts)?;
        let components = classify(&matrix)?;
        let cartan = CartanType(components.iter().map(|c| c.kind).collect());
        let label = label.unwrap_or_else(|| cartan.to_string());
        let roots = build_root_permutations(&matrix, &components)?;
        let mut sys = CoxeterSystem {
            label,
            cartan,
            components,
            matrix,
            roots,
            images: Vec::new(),
            length: Vec::new(),
            right_asc: Vec::new(),
            left_asc: Vec::new(),
            conj: Vec::new(),
            right_mul: Vec::new(),
            left_mul: Vec::new(),
            inverse: Vec::new(),
            parent: Vec::new(),
            last_gen: Vec::new(),
            index: HashMap::new(),
            names: (1..=rank).map(|i| i.to_string()).collect(),
        };
        sys.enumerate();
        Ok(sys)
    }

    fn key_of(&self, simple_images: impl Iterator<Item = u8>) -> u64 {
        simple_images.fold(0u64, |k, b| k << 8 | b as u64)
    }

    #[inline]
    fn image_raw(&self, w: usize, rho: u8) -> u8 {
        let n = self.roots.n_pos;
        let r = rho as usize;
        if r < n {
            self.images[w * n + r]
        } else {
            self.roots.negate(self.images[w * n + r - n])
        }
    }

    fn enumerate(&mut self) {
        let r = self.rank();
        let n = self.roots.n_pos;
        let identity: Vec<u8> = (0..n as u8).collect();
        self.index.insert(self.key_of(identity[..r].iter().copied()), 0);
        self.images.extend_from_slice(&identity);
        self.length.push(0);
        self.parent.push(u32::MAX);
        self.last_gen.push(NONE);
        let mut level_start = 0;
        let mut buf = vec![0u8; n];
        loop {
            let level_end = self.length.len();
            if level_start == level_end {
                break;
            }
            for w in level_start..level_end {
                for s in 0..r {
                    // s is a right ascent iff w(alpha_s) > 0
                    if self.images[w * n + s] as usize >= n {
                        continue;
                    }
                    for (b, rho) in buf.iter_mut().zip(0..n as u8) {
                        *b = self.image_raw(w, self.roots.action[s][rho as usize]);
                    }
                    let key = self.key_of(buf[..r].iter().copied());
                    if self.index.contains_key(&key) {
                        continue;
                    }
                    let id = self.length.len() as u32;
                    self.index.insert(key, id);
                    self.images.extend_from_slice(&buf);
                    self.length.push(self.length[w] + 1);
                    self.parent.push(w as u32);
                    self.last_gen.push(s as u8);
                }
            }
            level_start = level_end;
        }

        let order = self.length.len();
        self.right_asc = vec![0; order];
        self.left_asc = vec![0; order];
        self.conj = vec![NONE; order * r];
        self.right_mul = vec![0; order * r];
        self.left_mul = vec![0; order * r];
        self.inverse = vec![0; order];
        let mut simple = vec![0u8; r];
        for w in 0..order {
            for s in 0..r {
                let img = self.images[w * n + s];
                if (img as usize) < n {
                    self.right_asc[w] |= 1 << s;
                }
                let t = img as usize % n;
                if t < r {
                    self.conj[w * r + s] = t as u8;
                }
                for (i, b) in simple.iter_mut().enumerate() {
                    *b = self.image_raw(w, self.roots.action[s][i]);
                }
                self.right_mul[w * r + s] = self.index[&self.key_of(simple.iter().copied())];
                for (i, b) in simple.iter_mut().enumerate() {
                    *b = self.roots.action[s][self.images[w * n + i] as usize];
                }
                self.left_mul[w * r + s] = self.index[&self.key_of(simple.iter().copied())];
            }
            // w^-1(alpha_i) is the root beta with w(beta) = alpha_i
            for (i, b) in simple.iter_mut().enumerate() {
                *b = (0..n)
                    .find_map(|beta| {
                        let img = self.images[w * n + beta] as usize;
                        if img == i {
                            Some(beta as u8)
                        } else if img == i + n {
                            Some((beta + n) as u8)
                        } else {
                            None
                        }
                    })
                    .expect("permutation of the roots");
            }
            self.inverse[w] = self.index[&self.key_of(simple.iter().copied())];
        }
        for w in 0..order {
            let winv = self.inverse[w] as usize;
            self.left_asc[w] = self.right_asc[winv];
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Textual name of a generator: its 1-based position, except that the
    /// second fork node of a type `D` diagram is `1p`.
    pub fn generator_name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn parse_generator(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name.trim())
    }

    /// Renders a subset as `[1,3]`.
    pub fn format_subset(&self, set: Subset) -> String {
        let parts: Vec<&str> = set.iter().map(|s| self.generator_name(s)).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.length.len()
    }

    pub fn n_positive_roots(&self) -> usize {
        self.roots.n_pos
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.rank())
    }

    /// Checks that `s` is a subset of the generating set.
    pub fn check_subset(&self, s: Subset) -> Result<Subset> {
        if s.is_subset_of(self.full_set()) {
            Ok(s)
        } else {
            Err(Error::InvalidSubset { subset: s.bits(), rank: self.rank() })
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest_element(&self) -> usize {
        self.order() - 1
    }

    #[inline]
    pub fn length(&self, w: usize) -> usize {
        self.length[w] as usize
    }

    /// `R(w) = { s : l(ws) > l(w) }`.
    #[inline]
    pub fn right_ascents(&self, w: usize) -> Subset {
        Subset(self.right_asc[w])
    }

    /// `{ s : l(sw) > l(w) }`.
    #[inline]
    pub fn left_ascents(&self, w: usize) -> Subset {
        Subset(self.left_asc[w])
    }

    /// The simple reflection `t = w s w^-1`, if that conjugate is simple.
    #[inline]
    pub fn conjugate_simple(&self, w: usize, s: usize) -> Option<usize> {
        let t = self.conj[w * self.rank() + s];
        (t != NONE).then_some(t as usize)
    }

    #[inline]
    pub fn mul_gen(&self, w: usize, s: usize) -> usize {
        self.right_mul[w * self.rank() + s] as usize
    }

    #[inline]
    pub fn gen_mul(&self, s: usize, w: usize) -> usize {
        self.left_mul[w * self.rank() + s] as usize
    }

    #[inline]
    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        let key = self.key_of((0..self.rank()).map(|i| self.image_raw(u, self.images[v * self.roots.n_pos + i])));
        self.index[&key] as usize
    }

    /// Image of the generator set under conjugation `I -> w I w^-1`, when it stays inside `S`.
    pub fn conjugate_subset(&self, w: usize, set: Subset) -> Option<Subset> {
        let mut out = Subset::EMPTY;
        for s in set.iter() {
            out.insert(self.conjugate_simple(w, s)?);
        }
        Some(out)
    }

    /// The canonical (lexicographically minimal) reduced word.
    pub fn word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while cur != 0 {
            word.push(self.last_gen[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        word.reverse();
        word
    }

    pub fn element(&self, w: usize) -> GroupElement {
        GroupElement { index: w, word: self.word(w), length: self.length(w) }
    }

    /// Evaluates a word in the generators.
    pub fn word_to_element(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &s| self.mul_gen(w, s))
    }

    /// Set of generators occurring in any reduced word of `w`.
    pub fn support(&self, w: usize) -> Subset {
        Subset::from_indices(self.word(w))
    }

    /// Whether `w` lies in the standard parabolic subgroup `W_I`.
    pub fn in_parabolic(&self, w: usize, set: Subset) -> bool {
        self.support(w).is_subset_of(set)
    }

    /// Longest element of the standard parabolic subgroup `W_I`.
    pub fn longest_in(&self, set: Subset) -> usize {
        let mut w = 0;
        while let Some(s) = set.iter().find(|&s| self.right_ascents(w).contains(s)) {
            w = self.mul_gen(w, s);
        }
        w
    }

    /// Order of the element `w`.
    pub fn element_order(&self, w: usize) -> usize {
        let mut k = 1;
        let mut cur = w;
        while cur != 0 {
            cur = self.mul(cur, w);
            k += 1;
        }
        k
    }

    /// `X_I`, the minimal left coset representatives of `W_I`, sorted by (length, index).
    pub fn min_coset_reps(&self, set: Subset) -> Result<Vec<usize>> {
        self.check_subset(set)?;
        Ok((0..self.order()).filter(|&w| set.is_subset_of(self.right_ascents(w))).collect())
    }

    /// `X_{IJK} = { d in X_I^-1 ∩ X_J : d^-1 I d ∩ J = K }`.
    pub fn structure_set(&self, i: Subset, j: Subset, k: Subset) -> Result<Vec<usize>> {
        self.check_subset(i)?;
        self.check_subset(j)?;
        self.check_subset(k)?;
        Ok((0..self.order())
            .filter(|&d| {
                i.is_subset_of(self.left_ascents(d))
                    && j.is_subset_of(self.right_ascents(d))
                    && self.intersection_type(d, i, j) == k
            })
            .collect())
    }

    /// `d^-1 I d ∩ J`, i.e. the `s` in `J` with `d s d^-1` in `I`.
    #[inline]
    pub fn intersection_type(&self, d: usize, i: Subset, j: Subset) -> Subset {
        Subset::from_indices(j.iter().filter(|&s| self.conjugate_simple(d, s).is_some_and(|t| i.contains(t))))
    }

    pub fn is_w0_central(&self) -> bool {
        let w0 = self.longest_element();
        (0..self.rank()).all(|s| self.conjugate_simple(w0, s) == Some(s))
    }

    /// Permutation `s -> w0 s w0` of the generators.
    pub fn w0_permutation(&self) -> Vec<usize> {
        let w0 = self.longest_element();
        (0..self.rank())
            .map(|s| self.conjugate_simple(w0, s).expect("w0 normalises S"))
            .collect()
    }

    /// Coxeter matrix of the principal submatrix on `set`, generators in increasing order.
    pub fn parabolic_matrix(&self, set: Subset) -> Vec<Vec<u32>> {
        let g: Vec<usize> = set.iter().collect();
        g.iter().map(|&a| g.iter().map(|&b| self.matrix[a][b]).collect()).collect()
    }

    /// The standard parabolic subsystem on `set`, built as a standalone system.
    pub fn parabolic(&self, set: Subset) -> Result<CoxeterSystem> {
        self.check_subset(set)?;
        let label = format!("{}{}", self.label, self.format_subset(set));
        let mut sys = CoxeterSystem::from_matrix_with(self.parabolic_matrix(set), Some(label), BuildOptions::default())?;
        sys.names = set.iter().map(|s| self.names[s].clone()).collect();
        Ok(sys)
    }
}

fn check_rank(rank: usize, opts: BuildOptions) -> Result<()> {
    let cap = opts.rank_cap.min(HARD_RANK_LIMIT);
    if rank > cap {
        return Err(Error::RankCapExceeded { rank, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(CoxeterSystem::from_label("A2").unwrap().order(), 6);
        assert_eq!(CoxeterSystem::from_label("B2").unwrap().order(), 8);
        assert_eq!(CoxeterSystem::from_label("A0").unwrap().order(), 1);
    }

    #[test]
    fn e8_is_refused() {
        match CoxeterSystem::from_label("E8") {
            Err(Error::RankCapExceeded { rank: 8, cap: 7 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let err = CoxeterSystem::from_label_with("E8", BuildOptions { rank_cap: 99 }).unwrap_err();
        assert!(err.to_string().contains("cap of 7"), "{err}");
        assert!(CoxeterSystem::from_label_with("E7", BuildOptions { rank_cap: 6 }).is_err());
    }

    #[test]
    fn infinite_matrix_is_rejected() {
        let m = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert!(matches!(CoxeterSystem::from_matrix(m), Err(Error::InfiniteGroup(_))));
    }

    #[test]
    fn words_are_lexicographically_minimal_and_sorted() {
        let w = CoxeterSystem::from_label("A2").unwrap();
        let words: Vec<_> = (0..w.order()).map(|i| w.word(i)).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn a2_coset_reps() {
        let w = CoxeterSystem::from_label("A2").unwrap();
        let reps = w.min_coset_reps(Subset::singleton(0)).unwrap();
        let words: Vec<_> = reps.iter().map(|&d| w.word(d)).collect();
        // {e, s2, s1 s2}
        assert_eq!(words, vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(w.min_coset_reps(w.full_set()).unwrap(), vec![0]);
        assert_eq!(w.min_coset_reps(Subset::EMPTY).unwrap().len(), 6);
    }

    #[test]
    fn longest_elements() {
        let a2 = CoxeterSystem::from_label("A2").unwrap();
        assert_eq!(a2.length(a2.longest_element()), 3);
        assert!(!a2.is_w0_central());
        assert_eq!(a2.w0_permutation(), vec![1, 0]);
        let b2 = CoxeterSystem::from_label("B2").unwrap();
        assert_eq!(b2.length(b2.longest_element()), 4);
        assert!(b2.is_w0_central());
        let a1 = CoxeterSystem::from_label("A1").unwrap();
        assert_eq!(a1.word(a1.longest_element()), vec![0]);
        assert!(a1.is_w0_central());
    }

    #[test]
    fn longest_in_parabolic() {
        let w = CoxeterSystem::from_label("B3").unwrap();
        assert_eq!(w.length(w.longest_in(Subset::from_indices([0, 1]))), 4);
        assert_eq!(w.longest_in(w.full_set()), w.longest_element());
        assert_eq!(w.longest_in(Subset::EMPTY), 0);
    }
}
