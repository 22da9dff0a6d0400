//! Diagram automorphisms and the fixed subalgebras `Σ(W)^σ`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{loewy_series, DescentAlgebra, DescentVector, LoewyProfile};
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Rational, Subspace};
use crate::subset::{power_set, Subset};

/// A permutation of `S` preserving the Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    permutation: Vec<usize>,
    order: usize,
    is_inner_by_w0: bool,
}

fn permutation_order(p: &[usize]) -> usize {
    let mut cur: Vec<usize> = (0..p.len()).collect();
    let id = cur.clone();
    let mut k = 1;
    loop {
        cur = cur.iter().map(|&i| p[i]).collect();
        if cur == id {
            return k;
        }
        k += 1;
    }
}

impl DiagramAutomorphism {
    /// Validates `permutation` against the Coxeter matrix of `w`.
    pub fn new(w: &CoxeterSystem, permutation: Vec<usize>) -> Result<Self> {
        let r = w.rank();
        let mut seen = vec![false; r];
        let bijective = permutation.len() == r
            && permutation.iter().all(|&p| p < r && !std::mem::replace(&mut seen[p], true));
        let m = w.coxeter_matrix();
        if !bijective || (0..r).any(|a| (0..r).any(|b| m[permutation[a]][permutation[b]] != m[a][b])) {
            return Err(Error::AutomorphismMismatch(format!(
                "{permutation:?} is not a diagram automorphism of {}",
                w.label()
            )));
        }
        Ok(DiagramAutomorphism {
            order: permutation_order(&permutation),
            is_inner_by_w0: permutation == w.w0_permutation(),
            permutation,
        })
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// `o(σ)`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Whether σ coincides with conjugation by `w0`.
    pub fn is_inner_by_w0(&self) -> bool {
        self.is_inner_by_w0
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn rank(&self) -> usize {
        self.permutation.len()
    }

    pub fn apply(&self, s: usize) -> usize {
        self.permutation[s]
    }

    pub fn apply_subset(&self, set: Subset) -> Subset {
        set.permute(&self.permutation)
    }

    pub fn inverse(&self) -> DiagramAutomorphism {
        let mut inv = vec![0; self.rank()];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        let is_inner_by_w0 = self.is_inner_by_w0 && self.order <= 2;
        DiagramAutomorphism { permutation: inv, order: self.order, is_inner_by_w0 }
    }

    /// `σ(x)`, permuting x-coordinates: `σ(x_I) = x_{σ(I)}`.
    pub fn act(&self, v: &DescentVector) -> DescentVector {
        let xs = v.x_coords();
        let mut out = vec![Rational::zero(); xs.len()];
        for i in power_set(self.rank()) {
            out[self.apply_subset(i).index()] = xs[i.index()].clone();
        }
        v.algebra().from_x(out)
    }

    /// `σ(λ)` for every shape, checking that it does not depend on the member chosen.
    pub fn on_shapes(&self, algebra: &DescentAlgebra) -> Result<Vec<usize>> {
        let shapes = algebra.shapes();
        shapes
            .classes()
            .iter()
            .map(|sh| {
                let target = shapes.class_of(self.apply_subset(sh.canonical));
                if sh.members.iter().all(|&m| shapes.class_of(self.apply_subset(m)) == target) {
                    Ok(target)
                } else {
                    Err(Error::AutomorphismMismatch(format!("σ is not well defined on shape {}", sh.class_id)))
                }
            })
            .collect()
    }
}

/// All diagram automorphisms: identity first, then by order and permutation.
pub fn diagram_automorphisms(w: &CoxeterSystem) -> Vec<DiagramAutomorphism> {
    let r = w.rank();
    let m = w.coxeter_matrix();
    let mut found = Vec::new();
    let mut perm = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn extend(
        m: &[Vec<u32>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        found: &mut Vec<Vec<usize>>,
    ) {
        let a = perm.len();
        if a == m.len() {
            found.push(perm.clone());
            return;
        }
        for p in 0..m.len() {
            if used[p] || m[p][p] != m[a][a] || (0..a).any(|b| m[p][perm[b]] != m[a][b]) {
                continue;
            }
            used[p] = true;
            perm.push(p);
            extend(m, perm, used, found);
            perm.pop();
            used[p] = false;
        }
    }
    extend(m, &mut perm, &mut used, &mut found);
    let mut autos: Vec<DiagramAutomorphism> = found
        .into_iter()
        .map(|p| DiagramAutomorphism::new(w, p).expect("search only yields automorphisms"))
        .collect();
    autos.sort_by(|a, b| (a.order, &a.permutation).cmp(&(b.order, &b.permutation)));
    autos
}

/// `σ0`, conjugation by the longest element.
pub fn sigma0(w: &CoxeterSystem) -> DiagramAutomorphism {
    DiagramAutomorphism::new(w, w.w0_permutation()).expect("conjugation by w0 preserves the diagram")
}

/// The first automorphism of the given order, if any.
pub fn automorphism_of_order(w: &CoxeterSystem, order: usize) -> Result<DiagramAutomorphism> {
    diagram_automorphisms(w).into_iter().find(|a| a.order == order).ok_or_else(|| {
        Error::UnavailableAutomorphism { label: w.label().to_string(), order }
    })
}

/// `Σ(W)^σ` with the basis of orbit sums of the `x_I`.
#[derive(Debug, Clone)]
pub struct FixedSubalgebra {
    algebra: Arc<DescentAlgebra>,
    sigma: DiagramAutomorphism,
    orbits: Vec<Vec<Subset>>,
    shape_orbits: Vec<Vec<usize>>,
}

fn orbits_of<T: Copy + Ord>(items: impl Iterator<Item = T>, step: impl Fn(T) -> T) -> Vec<Vec<T>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in items {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit = vec![x];
        seen.insert(x);
        let mut y = step(x);
        while y != x {
            seen.insert(y);
            orbit.push(y);
            y = step(y);
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

impl FixedSubalgebra {
    pub fn new(algebra: &Arc<DescentAlgebra>, sigma: DiagramAutomorphism) -> Result<Self> {
        DiagramAutomorphism::new(algebra.system(), sigma.permutation.clone())?;
        let on_shapes = sigma.on_shapes(algebra)?;
        let orbits = orbits_of(power_set(algebra.rank()), |i| sigma.apply_subset(i));
        let shape_orbits = orbits_of(0..algebra.shapes().len(), |l| on_shapes[l]);
        Ok(FixedSubalgebra { algebra: Arc::clone(algebra), sigma, orbits, shape_orbits })
    }

    pub fn algebra(&self) -> &Arc<DescentAlgebra> {
        &self.algebra
    }

    pub fn sigma(&self) -> &DiagramAutomorphism {
        &self.sigma
    }

    /// σ-orbits on the power set of `S`, each sorted by mask.
    pub fn orbits(&self) -> &[Vec<Subset>] {
        &self.orbits
    }

    /// `Λ/σ`.
    pub fn shape_orbits(&self) -> &[Vec<usize>] {
        &self.shape_orbits
    }

    pub fn dim(&self) -> usize {
        self.orbits.len()
    }

    fn orbit_sum(&self, orbit: &[Subset]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.algebra.dim()];
        for i in orbit {
            v[i.index()] = BigInt::one();
        }
        v
    }

    pub fn basis(&self) -> Vec<DescentVector> {
        self.orbits.iter().map(|o| self.algebra.from_integers(&self.orbit_sum(o))).collect()
    }

    /// The subalgebra as a subspace of `Σ(W)`.
    pub fn span(&self) -> Subspace {
        let rows: Vec<Vec<BigInt>> = self.orbits.iter().map(|o| self.orbit_sum(o)).collect();
        Subspace::spanned_by(self.algebra.dim(), rows.iter().map(Vec::as_slice))
    }

    pub fn contains(&self, v: &DescentVector) -> bool {
        self.sigma.act(v) == *v
    }

    /// Whether products of basis elements stay σ-fixed.
    pub fn is_closed(&self) -> bool {
        let basis: Vec<Vec<BigInt>> = self.orbits.iter().map(|o| self.orbit_sum(o)).collect();
        basis.iter().all(|a| {
            basis.iter().all(|b| {
                let p = self.algebra.mul_int(a, b);
                power_set(self.algebra.rank()).all(|i| p[i.index()] == p[self.sigma.apply_subset(i).index()])
            })
        })
    }

    /// `(Rad Σ(W))^σ`, spanned by the orbit sums of the differences `x_I - x_J`, `I ≡ J`.
    pub fn radical_generators(&self) -> Vec<Vec<BigInt>> {
        self.algebra
            .radical_differences()
            .into_iter()
            .map(|d| {
                let mut acc = vec![BigInt::zero(); d.len()];
                let mut cur = d;
                for _ in 0..self.sigma.order() {
                    for (a, c) in acc.iter_mut().zip(&cur) {
                        *a += c;
                    }
                    let mut next = vec![BigInt::zero(); cur.len()];
                    for i in power_set(self.algebra.rank()) {
                        next[self.sigma.apply_subset(i).index()] = cur[i.index()].clone();
                    }
                    cur = next;
                }
                acc
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect()
    }

    pub fn radical(&self) -> Subspace {
        Subspace::spanned_by(self.algebra.dim(), self.radical_generators().iter().map(Vec::as_slice))
    }

    /// `A ∩ Rad Σ(W)`, computed as the kernel of `θ` on the orbit-sum basis.
    pub fn radical_by_kernel(&self) -> Subspace {
        let alg = &self.algebra;
        let rows: Vec<Vec<Rational>> = alg
            .shapes()
            .classes()
            .iter()
            .map(|sh| {
                self.orbits
                    .iter()
                    .map(|o| {
                        let t: u64 = o.iter().map(|&i| alg.tau_basis(i, sh.canonical)).sum();
                        Rational::from_integer(BigInt::from(t))
                    })
                    .collect()
            })
            .collect();
        let mut s = Subspace::new(alg.dim());
        for k in nullspace(&rows, self.dim()) {
            let mut v = vec![Rational::zero(); alg.dim()];
            for (c, o) in k.iter().zip(&self.orbits) {
                for i in o {
                    v[i.index()] = c.clone();
                }
            }
            s.insert_rational(&v);
        }
        s
    }

    pub fn loewy_profile(&self) -> LoewyProfile {
        loewy_series(&self.algebra, self.dim(), &self.radical_generators()).0
    }

    /// The powers `(Rad A)^i` for `i >= 1`, while nonzero.
    pub fn radical_powers(&self) -> Vec<Subspace> {
        loewy_series(&self.algebra, self.dim(), &self.radical_generators()).1
    }
}

/// Whether `w0` is central, read off from the invertibility of every `y_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct W0Criterion {
    pub is_central: bool,
    /// The `J` with `y_J` not invertible, in mask order.
    pub noninvertible: Vec<Subset>,
}

pub fn w0_centrality_criterion(algebra: &Arc<DescentAlgebra>) -> W0Criterion {
    let noninvertible: Vec<Subset> = power_set(algebra.rank())
        .filter(|&j| !algebra.is_invertible(&algebra.basis_y(j)))
        .collect();
    W0Criterion { is_central: noninvertible.is_empty(), noninvertible }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        let count = |l: &str| diagram_automorphisms(&CoxeterSystem::from_label(l).unwrap()).len();
        assert_eq!(count("A2"), 2);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("B3"), 1);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("A1xA1"), 2);
    }

    #[test]
    fn identity_comes_first() {
        let autos = diagram_automorphisms(&CoxeterSystem::from_label("D4").unwrap());
        assert!(autos[0].is_identity());
        let orders: Vec<usize> = autos.iter().map(|a| a.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn sigma0_examples() {
        let b2 = CoxeterSystem::from_label("B2").unwrap();
        assert!(sigma0(&b2).is_identity());
        let a2 = CoxeterSystem::from_label("A2").unwrap();
        assert_eq!(sigma0(&a2).permutation(), &[1, 0]);
        let d5 = CoxeterSystem::from_label("D5").unwrap();
        assert_eq!(sigma0(&d5).permutation(), &[1, 0, 2, 3, 4]);
    }

    #[test]
    fn rejects_foreign_permutations() {
        let b3 = CoxeterSystem::from_label("B3").unwrap();
        assert!(matches!(DiagramAutomorphism::new(&b3, vec![2, 1, 0]), Err(Error::AutomorphismMismatch(_))));
    }
}
