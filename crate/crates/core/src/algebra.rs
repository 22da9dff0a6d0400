//! Solomon's descent algebra `Σ(W)` with exact rational coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cartan::Irreducible;
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, nullspace, rat, Polynomial, Rational, Subspace};
use crate::shapes::{element_shapes, ShapeClasses};
use crate::subset::{power_set, Subset};

/// The numbers `|X_{IJK}|`, stored densely by subset masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    counts: Vec<u64>,
    /// nonzero `(K, |X_IJK|)` for each pair `(I, J)`
    rows: Vec<Vec<(u32, u64)>>,
}

impl StructureConstants {
    /// Counts `X_{IJK}` in one sweep over `W`. Elements are grouped by their
    /// left ascents, right ascents and the partial conjugation map on simple
    /// reflections, which together determine every `(I, J, K)` they feed.
    pub fn compute(w: &CoxeterSystem) -> Self {
        let r = w.rank();
        let mut signatures: HashMap<(u32, u32, u64), u64> = HashMap::new();
        for d in 0..w.order() {
            let ra = w.right_ascents(d);
            let conj = ra.iter().fold(0u64, |acc, s| {
                let t = w.conjugate_simple(d, s).map_or(0, |t| t as u64 + 1);
                acc | t << (4 * s)
            });
            *signatures.entry((w.left_ascents(d).bits(), ra.bits(), conj)).or_default() += 1;
        }
        let mut counts = vec![0u64; 1 << (3 * r)];
        for ((la, ra, conj), n) in signatures {
            let (la, ra) = (Subset(la), Subset(ra));
            for i in la.subsets() {
                let pre = Subset::from_indices(ra.iter().filter(|&s| {
                    let t = (conj >> (4 * s)) & 0xf;
                    t != 0 && i.contains(t as usize - 1)
                }));
                for j in ra.subsets() {
                    let k = j.intersection(pre);
                    counts[(((i.index() << r) | j.index()) << r) | k.index()] += n;
                }
            }
        }
        Self::from_dense(r, counts)
    }

    fn from_dense(rank: usize, counts: Vec<u64>) -> Self {
        let n = 1usize << rank;
        let rows = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter_map(|k| {
                        let c = counts[ij * n + k];
                        (c != 0).then_some((k as u32, c))
                    })
                    .collect()
            })
            .collect();
        StructureConstants { rank, counts, rows }
    }

    /// Rebuilds a table from its nonzero `(I, J, K, |X_IJK|)` entries.
    pub fn from_triples(rank: usize, triples: impl IntoIterator<Item = (u32, u32, u32, u64)>) -> Result<Self> {
        let n = 1usize << rank;
        let mut counts = vec![0u64; n * n * n];
        for (i, j, k, c) in triples {
            for s in [i, j, k] {
                if s as usize >= n {
                    return Err(Error::InvalidSubset { subset: s, rank });
                }
            }
            counts[(((i as usize) << rank | j as usize) << rank) | k as usize] = c;
        }
        Ok(Self::from_dense(rank, counts))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|X_{IJK}|`.
    pub fn get(&self, i: Subset, j: Subset, k: Subset) -> u64 {
        self.counts[(((i.index() << self.rank) | j.index()) << self.rank) | k.index()]
    }

    /// Nonzero terms of `x_I x_J`.
    pub fn product(&self, i: Subset, j: Subset) -> &[(u32, u64)] {
        &self.rows[(i.index() << self.rank) | j.index()]
    }

    /// All nonzero entries as `(I, J, K, |X_IJK|)`, in mask order.
    pub fn triples(&self) -> impl Iterator<Item = (u32, u32, u32, u64)> + '_ {
        let r = self.rank;
        self.rows.iter().enumerate().flat_map(move |(ij, row)| {
            row.iter().map(move |&(k, c)| ((ij >> r) as u32, (ij & ((1 << r) - 1)) as u32, k, c))
        })
    }
}

/// The basis in which a [`DescentVector`] stores its coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `x_I`, the sums over minimal coset representatives.
    X,
    /// `y_J`, the sums over elements with descent set exactly `J`.
    Y,
    /// `x'_I = sum_{K ⊆ I} (-1/2)^{|I|-|K|} x_K`.
    XPrime,
}

impl Basis {
    pub fn prefix(self) -> &'static str {
        match self {
            Basis::X => "x",
            Basis::Y => "y",
            Basis::XPrime => "xp",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Basis::X),
            "y" => Ok(Basis::Y),
            "xp" => Ok(Basis::XPrime),
            _ => Err(Error::UnsupportedType(format!("unknown basis `{s}`"))),
        }
    }
}

/// `out[I] = sum_{K ⊆ I} c^{|I \ K|} v[K]`.
fn transform_down(v: &mut [Rational], rank: usize, c: &Rational) {
    for b in 0..rank {
        for m in 0..v.len() {
            if m >> b & 1 == 1 {
                let t = &v[m ^ (1 << b)] * c;
                v[m] += t;
            }
        }
    }
}

/// `out[K] = sum_{I ⊇ K} c^{|I \ K|} v[I]`.
fn transform_up(v: &mut [Rational], rank: usize, c: &Rational) {
    for b in 0..rank {
        for m in 0..v.len() {
            if m >> b & 1 == 0 {
                let t = &v[m | (1 << b)] * c;
                v[m] += t;
            }
        }
    }
}

/// Values `lambda -> tau_lambda(x)`, indexed by shape id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauVector {
    pub values: Vec<Rational>,
}

impl TauVector {
    pub fn get(&self, shape: usize) -> &Rational {
        &self.values[shape]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Pointwise product.
    pub fn hadamard(&self, other: &TauVector) -> TauVector {
        TauVector { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }
}

/// Dimensions of the powers of the radical of a subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoewyProfile {
    /// `d_0 = dim A`, `d_i = dim (Rad A)^i`, listed while nonzero.
    pub dims: Vec<usize>,
    /// Least `k >= 1` with `(Rad A)^k = 0`.
    pub loewy_length: usize,
}

impl LoewyProfile {
    /// `d_0 - d_1`, the number of simple modules.
    pub fn irreducible_count(&self) -> usize {
        self.dims[0] - self.dims.get(1).copied().unwrap_or(0)
    }
}

/// Powers of a radical, given a generating set of it inside an algebra of dimension `dim`.
pub fn loewy_series(
    algebra: &DescentAlgebra,
    dim: usize,
    radical_generators: &[Vec<BigInt>],
) -> (LoewyProfile, Vec<Subspace>) {
    let n = algebra.dim();
    let rad = Subspace::spanned_by(n, radical_generators.iter().map(Vec::as_slice));
    let mut dims = vec![dim];
    let mut powers = Vec::new();
    let mut current = rad;
    while !current.is_zero() {
        dims.push(current.dim());
        let mut next = Subspace::new(n);
        'fill: for u in current.basis() {
            for g in radical_generators {
                next.insert(&algebra.mul_int(u, g));
                if next.dim() == current.dim() {
                    break 'fill;
                }
            }
        }
        powers.push(current);
        current = next;
    }
    let loewy_length = dims.len();
    (LoewyProfile { dims, loewy_length }, powers)
}

/// The descent algebra of a finite Coxeter system.
pub struct DescentAlgebra {
    system: Arc<CoxeterSystem>,
    shapes: ShapeClasses,
    constants: StructureConstants,
    element_shapes: OnceLock<Vec<usize>>,
}

impl fmt::Debug for DescentAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DescentAlgebra").field("system", &self.system.label()).field("dim", &self.dim()).finish()
    }
}

impl DescentAlgebra {
    pub fn new(system: CoxeterSystem) -> Arc<Self> {
        let constants = StructureConstants::compute(&system);
        Self::assemble(Arc::new(system), constants)
    }

    pub fn from_shared(system: Arc<CoxeterSystem>) -> Arc<Self> {
        let constants = StructureConstants::compute(&system);
        Self::assemble(system, constants)
    }

    /// Uses precomputed structure constants (e.g. from a cache).
    pub fn with_constants(system: impl Into<Arc<CoxeterSystem>>, constants: StructureConstants) -> Result<Arc<Self>> {
        let system = system.into();
        if constants.rank() != system.rank() {
            return Err(Error::SystemMismatch(
                system.label().to_string(),
                format!("table of rank {}", constants.rank()),
            ));
        }
        Ok(Self::assemble(system, constants))
    }

    pub fn from_label(label: &str) -> Result<Arc<Self>> {
        Ok(Self::new(CoxeterSystem::from_label(label)?))
    }

    fn assemble(system: Arc<CoxeterSystem>, constants: StructureConstants) -> Arc<Self> {
        let shapes = ShapeClasses::compute(&system);
        Arc::new(DescentAlgebra { system, shapes, constants, element_shapes: OnceLock::new() })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn shared_system(&self) -> Arc<CoxeterSystem> {
        Arc::clone(&self.system)
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// `2^|S|`.
    pub fn dim(&self) -> usize {
        1 << self.rank()
    }

    pub fn shapes(&self) -> &ShapeClasses {
        &self.shapes
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// `Lambda(w)` for every element, computed on first use.
    pub fn element_shapes(&self) -> &[usize] {
        self.element_shapes.get_or_init(|| element_shapes(&self.system, &self.shapes))
    }

    pub fn same_as(&self, other: &DescentAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.system.label() == other.system.label()
                && self.system.coxeter_matrix() == other.system.coxeter_matrix())
    }

    fn check_same(&self, other: &DescentAlgebra) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SystemMismatch(self.system.label().into(), other.system.label().into()))
        }
    }

    pub fn vector(self: &Arc<Self>, basis: Basis, coeffs: Vec<Rational>) -> DescentVector {
        assert_eq!(coeffs.len(), self.dim(), "coordinate vector has the wrong length");
        DescentVector { algebra: Arc::clone(self), basis, coeffs }
    }

    pub fn from_x(self: &Arc<Self>, coeffs: Vec<Rational>) -> DescentVector {
        self.vector(Basis::X, coeffs)
    }

    pub fn from_integers(self: &Arc<Self>, coeffs: &[BigInt]) -> DescentVector {
        self.from_x(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero(self: &Arc<Self>) -> DescentVector {
        self.from_x(vec![Rational::zero(); self.dim()])
    }

    fn basis_vector(self: &Arc<Self>, basis: Basis, set: Subset) -> DescentVector {
        let mut c = vec![Rational::zero(); self.dim()];
        c[set.index()] = Rational::one();
        self.vector(basis, c)
    }

    pub fn basis_x(self: &Arc<Self>, set: Subset) -> DescentVector {
        self.basis_vector(Basis::X, set)
    }

    pub fn basis_y(self: &Arc<Self>, set: Subset) -> DescentVector {
        self.basis_vector(Basis::Y, set)
    }

    pub fn basis_xprime(self: &Arc<Self>, set: Subset) -> DescentVector {
        self.basis_vector(Basis::XPrime, set)
    }

    /// The unit `x_S`.
    pub fn unit(self: &Arc<Self>) -> DescentVector {
        self.basis_x(self.system.full_set())
    }

    /// Product of x-coordinate vectors via `x_I x_J = sum_K |X_IJK| x_K`.
    pub fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai * bj;
                for &(k, c) in self.constants.product(Subset(i as u32), Subset(j as u32)) {
                    out[k as usize] += &ab * Rational::from_integer(BigInt::from(c));
                }
            }
        }
        out
    }

    /// Integer version of [`Self::mul_coords`].
    pub fn mul_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai * bj;
                for &(k, c) in self.constants.product(Subset(i as u32), Subset(j as u32)) {
                    out[k as usize] += &ab * c;
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &DescentVector, b: &DescentVector) -> Result<DescentVector> {
        self.check_same(&a.algebra)?;
        self.check_same(&b.algebra)?;
        let coeffs = self.mul_coords(&a.x_coords(), &b.x_coords());
        Ok(DescentVector { algebra: Arc::clone(&a.algebra), basis: Basis::X, coeffs })
    }

    /// `a` as a formal sum over `W`: the coefficient of `w` is the sum of
    /// `xi_I(a)` over the `I` with `w in X_I`.
    pub fn to_group_algebra(&self, a: &DescentVector) -> Vec<Rational> {
        let xs = a.x_coords();
        (0..self.system.order())
            .map(|w| {
                self.system
                    .right_ascents(w)
                    .subsets()
                    .map(|i| &xs[i.index()])
                    .fold(Rational::zero(), |acc, c| acc + c)
            })
            .collect()
    }

    /// Multiplies in the group algebra `QW` and reads the result back in the
    /// x-basis. Independent of the structure-constant table.
    pub fn oracle_multiply(&self, a: &DescentVector, b: &DescentVector) -> Result<DescentVector> {
        self.check_same(&a.algebra)?;
        self.check_same(&b.algebra)?;
        let w = &self.system;
        let (ga, gb) = (self.to_group_algebra(a), self.to_group_algebra(b));
        let (ia, ib) = (clear_denominators(&ga), clear_denominators(&gb));
        let scale = denominator_ratio(&ga, &ia) * denominator_ratio(&gb, &ib);
        let product = group_product(w, &ia, &ib);

        let mut eta: Vec<Option<BigInt>> = vec![None; self.dim()];
        for (x, p) in product.into_iter().enumerate() {
            let j = w.right_ascents(x).index();
            match &eta[j] {
                None => eta[j] = Some(p),
                Some(q) if *q == p => {}
                Some(q) => {
                    return Err(Error::NotInDescentAlgebra(format!(
                        "coefficients {q} and {p} on the descent class {}",
                        w.format_subset(Subset(j as u32))
                    )))
                }
            }
        }
        let mut coeffs: Vec<Rational> = eta
            .into_iter()
            .map(|e| Rational::from_integer(e.unwrap_or_default()) * &scale)
            .collect();
        transform_down(&mut coeffs, self.rank(), &rat(-1));
        Ok(DescentVector { algebra: Arc::clone(&a.algebra), basis: Basis::X, coeffs })
    }

    /// `tau_{lambda(J)}(x_I) = |X_IJJ|`.
    pub fn tau_basis(&self, i: Subset, j: Subset) -> u64 {
        self.constants.get(i, j, j)
    }

    /// `tau_lambda(a)` evaluated through a chosen member `j` of `lambda`.
    pub fn tau_at(&self, a: &DescentVector, j: Subset) -> Rational {
        a.x_coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(self.tau_basis(Subset(i as u32), j))))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn tau(&self, a: &DescentVector) -> TauVector {
        let xs = a.x_coords();
        let values = self
            .shapes
            .classes()
            .iter()
            .map(|sh| {
                xs.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| {
                        c * Rational::from_integer(BigInt::from(self.tau_basis(Subset(i as u32), sh.canonical)))
                    })
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect();
        TauVector { values }
    }

    /// `theta(a)(w) = tau_{Lambda(w)}(a)` for every `w`.
    pub fn theta(&self, a: &DescentVector) -> Vec<Rational> {
        let t = self.tau(a);
        self.element_shapes().iter().map(|&l| t.values[l].clone()).collect()
    }

    /// Matrix of `x -> tau(x)` (rows: shapes, columns: subsets).
    fn tau_matrix(&self) -> Vec<Vec<Rational>> {
        self.shapes
            .classes()
            .iter()
            .map(|sh| {
                power_set(self.rank())
                    .map(|i| Rational::from_integer(BigInt::from(self.tau_basis(i, sh.canonical))))
                    .collect()
            })
            .collect()
    }

    /// A basis of `Ker theta = Rad Σ(W)` obtained by exact kernel extraction.
    pub fn radical_basis(self: &Arc<Self>) -> Vec<DescentVector> {
        nullspace(&self.tau_matrix(), self.dim()).into_iter().map(|v| self.from_x(v)).collect()
    }

    /// The spanning set `x_I - x_J` with `I ≡ J`, one difference per
    /// non-canonical member of each shape.
    pub fn radical_differences(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for sh in self.shapes.classes() {
            for &m in sh.members.iter().filter(|&&m| m != sh.canonical) {
                let mut v = vec![BigInt::zero(); self.dim()];
                v[m.index()] = BigInt::one();
                v[sh.canonical.index()] = -BigInt::one();
                out.push(v);
            }
        }
        out
    }

    pub fn radical(&self) -> Subspace {
        Subspace::spanned_by(self.dim(), self.radical_differences().iter().map(Vec::as_slice))
    }

    pub fn loewy_profile(&self) -> LoewyProfile {
        loewy_series(self, self.dim(), &self.radical_differences()).0
    }

    /// Minimal polynomial of `a` acting on `Σ(W)` by left multiplication.
    ///
    /// Its roots are the values `tau_lambda(a)` and `prod_t (a - t)` lies in the
    /// radical, so it is `prod_t (T - t)^{e_t}`; the exponents are found with
    /// integer products after clearing denominators.
    pub fn minimal_polynomial(self: &Arc<Self>, a: &DescentVector) -> Polynomial {
        let xa = a.x_coords();
        let b = clear_denominators(&xa);
        let scale = denominator_ratio(&xa, &b);
        let mut roots: Vec<BigInt> = self
            .tau(&self.from_integers(&b))
            .values
            .into_iter()
            .map(|t| t.to_integer())
            .collect();
        roots.sort();
        roots.dedup();
        let one = self.unit().x_integers();
        let shifted: Vec<Vec<BigInt>> =
            roots.iter().map(|t| b.iter().zip(&one).map(|(x, u)| x - t * u).collect()).collect();
        let eval = |exps: &[u32]| {
            let mut acc = one.clone();
            for (f, &e) in shifted.iter().zip(exps) {
                for _ in 0..e {
                    acc = self.mul_int(f, &acc);
                }
            }
            acc.iter().all(Zero::is_zero)
        };
        let mut exps = vec![1u32; roots.len()];
        while !eval(&exps) {
            exps.iter_mut().for_each(|e| *e += 1);
        }
        for k in 0..exps.len() {
            while exps[k] > 1 {
                exps[k] -= 1;
                if !eval(&exps) {
                    exps[k] += 1;
                    break;
                }
            }
        }
        let mut f = Polynomial::new(vec![Rational::one()]);
        for (t, &e) in roots.iter().zip(&exps) {
            let linear = Polynomial::new(vec![-(Rational::from_integer(t.clone()) * &scale), Rational::one()]);
            for _ in 0..e {
                f = f.mul(&linear);
            }
        }
        f
    }

    /// Minimal polynomial as the first linear dependency among `1, a, a^2, ...`.
    ///
    /// Powers are reduced incrementally; each stored row carries the combination of
    /// powers it came from, so a row that reduces to zero is the relation itself.
    pub fn minimal_polynomial_by_powers(self: &Arc<Self>, a: &DescentVector) -> Polynomial {
        let xa = a.x_coords();
        let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
        let mut power = self.unit().coeffs;
        for k in 0..=self.dim() {
            let mut v = power.clone();
            let mut combo = vec![Rational::zero(); k + 1];
            combo[k] = Rational::one();
            for (p, row, rc) in &rows {
                if v[*p].is_zero() {
                    continue;
                }
                let f = &v[*p] / &row[*p];
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x -= &f * y;
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                Some(p) => rows.push((p, v, combo)),
                None => return Polynomial::new(combo),
            }
            power = self.mul_coords(&xa, &power);
        }
        unreachable!("a vector space of dimension n admits a relation among n + 1 vectors")
    }

    /// `Σ_F(W)`, the span of `x_I` for `I` in the family.
    pub fn family_span(&self, family: &[Subset]) -> Subspace {
        let mut s = Subspace::new(self.dim());
        for &i in family {
            let mut e = vec![BigInt::zero(); self.dim()];
            e[i.index()] = BigInt::one();
            s.insert(&e);
        }
        s
    }

    /// `F(a)` (closed under inclusion) or `F_eq(a)` (closed under the shape order).
    pub fn saturated_family(&self, a: &DescentVector, equivariant: bool) -> Vec<Subset> {
        let xs = a.x_coords();
        let support: Vec<Subset> = power_set(self.rank()).filter(|j| !xs[j.index()].is_zero()).collect();
        power_set(self.rank())
            .filter(|&i| {
                support.iter().any(|&j| {
                    if equivariant {
                        self.shapes.is_below(self.shapes.class_of(i), self.shapes.class_of(j))
                    } else {
                        i.is_subset_of(j)
                    }
                })
            })
            .collect()
    }

    /// Whether `family` is closed downward under inclusion (or under the shape order).
    pub fn is_saturated(&self, family: &[Subset], equivariant: bool) -> bool {
        let mut member = vec![false; self.dim()];
        for f in family {
            member[f.index()] = true;
        }
        family.iter().all(|&i| {
            power_set(self.rank()).all(|j| {
                let below = if equivariant {
                    self.shapes.is_below(self.shapes.class_of(j), self.shapes.class_of(i))
                } else {
                    j.is_subset_of(i)
                };
                !below || member[j.index()]
            })
        })
    }

    /// `a x_J` (or `x_J a` when `left`), with `a` given by integer coordinates.
    fn mul_basis_int(&self, a: &[BigInt], j: Subset, left: bool) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (p, q) = if left { (j, Subset(i as u32)) } else { (Subset(i as u32), j) };
            for &(k, c) in self.constants.product(p, q) {
                out[k as usize] += ai * c;
            }
        }
        out
    }

    /// `a x_J` for every `J`, computed from `a` with denominators cleared
    /// (spans and kernels do not see the scaling).
    fn basis_products(&self, a: &DescentVector, left: bool) -> Vec<Vec<BigInt>> {
        let xa = clear_denominators(&a.x_coords());
        power_set(self.rank()).map(|j| self.mul_basis_int(&xa, j, left)).collect()
    }

    /// `a Σ(W)`.
    pub fn right_ideal(&self, a: &DescentVector) -> Subspace {
        Subspace::spanned_by(self.dim(), self.basis_products(a, false).iter().map(Vec::as_slice))
    }

    /// `Σ(W) a`.
    pub fn left_ideal(&self, a: &DescentVector) -> Subspace {
        Subspace::spanned_by(self.dim(), self.basis_products(a, true).iter().map(Vec::as_slice))
    }

    /// A unit iff every `tau_lambda(a)` is nonzero.
    pub fn is_invertible(&self, a: &DescentVector) -> bool {
        self.tau(a).values.iter().all(|v| !v.is_zero())
    }

    /// Columns `mu_a(x_J) = a x_J - x_J a`, up to a common positive scalar.
    fn commutator_columns(&self, a: &DescentVector) -> Vec<Vec<BigInt>> {
        let right = self.basis_products(a, false);
        let left = self.basis_products(a, true);
        right.into_iter().zip(left).map(|(r, l)| r.into_iter().zip(l).map(|(p, q)| p - q).collect()).collect()
    }

    /// `im mu_a`.
    pub fn commutator_image(&self, a: &DescentVector) -> Subspace {
        Subspace::spanned_by(self.dim(), self.commutator_columns(a).iter().map(Vec::as_slice))
    }

    /// `Z(a) = Ker mu_a`.
    pub fn centralizer(&self, a: &DescentVector) -> Subspace {
        let cols = self.commutator_columns(a);
        let n = self.dim();
        let m: Vec<Vec<Rational>> =
            (0..n).map(|r| cols.iter().map(|c| Rational::from_integer(c[r].clone())).collect()).collect();
        Subspace::spanned_by_rational(n, nullspace(&m, n).iter().map(Vec::as_slice))
    }

    pub fn centralizer_dimension(&self, a: &DescentVector) -> usize {
        self.dim() - self.commutator_image(a).dim()
    }

    /// The terms of the centralizer-dimension formula for positive elements.
    pub fn centralizer_report(&self, a: &DescentVector) -> CentralizerReport {
        let image = self.commutator_image(a);
        let left = self.left_ideal(a);
        let f_eq = self.saturated_family(a, true).len();
        let f = self.saturated_family(a, false).len();
        let n = self.dim();
        CentralizerReport {
            dimension: n - image.dim(),
            formula: n - f_eq + left.dim() - image.intersection_dim(&left),
            bound: n - f_eq + left.dim(),
            coarse_bound: n - f_eq + f,
        }
    }

    /// `|{w : theta(a)(w) = value}|`, the dimension of the `value`-eigenspace
    /// of a positive `a` acting on `QW`.
    pub fn eigenspace_dim_on_regular(&self, a: &DescentVector, value: &Rational) -> Result<usize> {
        if !a.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(self.theta(a).iter().filter(|t| *t == value).count())
    }

    /// `(a_1, ..., a_r)` and `tau_r` for type `B_n`, with `t` as generator 0.
    pub fn witness_elements_type_b(self: &Arc<Self>) -> Result<TypeBWitnesses> {
        let n = match self.system.cartan_type().0[..] {
            [Irreducible::B(n)] if self.system.coxeter_matrix() == Irreducible::B(n).coxeter_matrix() => n,
            _ => {
                return Err(Error::WrongType {
                    expected: "B_n".into(),
                    got: self.system.label().into(),
                })
            }
        };
        if n < 3 {
            return Err(Error::RankTooSmall(n));
        }
        let r = (n - 1) / 2;
        let interval = |i: usize, j: usize| Subset::from_indices(i..=j);
        let a: Vec<DescentVector> = (1..=r)
            .map(|i| &self.basis_x(interval(2 * i - 1, n - 2)) - &self.basis_x(interval(2 * i, n - 1)))
            .collect();
        let mut tau = self.zero();
        for j in 0..2 * r {
            let c = binomial(BigInt::from(2 * r - 1), BigInt::from(j));
            let c = if j % 2 == 1 { -c } else { c };
            tau = &tau + &self.basis_x(interval(j + 1, n - 2 * r + j)).scale(&Rational::from_integer(c));
        }
        let mut product = self.unit();
        for ai in &a {
            product = ai * &product;
        }
        let level = n - 2 * r;
        let (px, tx) = (product.x_coords(), tau.x_coords());
        let mut scalar: Option<Rational> = None;
        let mut in_expected_span = !product.is_zero();
        for i in power_set(n) {
            let (p, t) = (&px[i.index()], &tx[i.index()]);
            if i.len() > level {
                in_expected_span &= p.is_zero();
            } else if i.len() == level {
                if t.is_zero() {
                    in_expected_span &= p.is_zero();
                } else {
                    let q = p / t;
                    match &scalar {
                        None => scalar = Some(q),
                        Some(s) => in_expected_span &= *s == q,
                    }
                }
            }
        }
        let scalar = scalar.unwrap_or_else(Rational::zero);
        in_expected_span &= !scalar.is_zero();
        Ok(TypeBWitnesses { n, r, a, tau, product, scalar, in_expected_span })
    }
}

impl DescentAlgebra {
    /// For `B_{2r+1}`: compares `(Ker θ)^r` with the line through `τ_r`.
    pub fn b_tau_report(self: &Arc<Self>) -> Result<BTauReport> {
        let wit = self.witness_elements_type_b()?;
        if wit.n % 2 == 0 {
            return Err(Error::WrongType { expected: "B_n with n odd".into(), got: self.system.label().into() });
        }
        let (_, powers) = loewy_series(self, self.dim(), &self.radical_differences());
        let power = powers.get(wit.r - 1).cloned().unwrap_or_else(|| Subspace::new(self.dim()));
        let contains_tau = power.contains_rational(&wit.tau.x_coords());
        Ok(BTauReport {
            n: wit.n,
            r: wit.r,
            radical_power_dim: power.dim(),
            contains_tau,
            equals_tau_line: contains_tau && power.dim() == 1,
        })
    }
}

/// Whether `(Ker θ)^r = Q τ_r` in type `B_{2r+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BTauReport {
    pub n: usize,
    pub r: usize,
    pub radical_power_dim: usize,
    pub contains_tau: bool,
    pub equals_tau_line: bool,
}

/// Output of [`DescentAlgebra::witness_elements_type_b`].
#[derive(Debug, Clone)]
pub struct TypeBWitnesses {
    pub n: usize,
    pub r: usize,
    pub a: Vec<DescentVector>,
    pub tau: DescentVector,
    /// `a_r ... a_1`.
    pub product: DescentVector,
    /// The coefficient `c` with `a_r ... a_1 - c tau_r` supported on smaller subsets.
    pub scalar: Rational,
    pub in_expected_span: bool,
}

/// Dimension of a centralizer next to the quantities bounding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralizerReport {
    pub dimension: usize,
    /// `2^|S| - |F_eq(a)| + dim Σ(W)a - dim(im mu_a ∩ Σ(W)a)`.
    pub formula: usize,
    /// `2^|S| - |F_eq(a)| + dim Σ(W)a`.
    pub bound: usize,
    /// `2^|S| - |F_eq(a)| + |F(a)|`.
    pub coarse_bound: usize,
}

/// `original / scaled` for a vector scaled by [`clear_denominators`].
fn denominator_ratio(original: &[Rational], scaled: &[BigInt]) -> Rational {
    original
        .iter()
        .zip(scaled)
        .find(|(_, s)| !s.is_zero())
        .map_or_else(Rational::one, |(o, s)| o / Rational::from_integer(s.clone()))
}

/// Convolution in `ZW`: `(sum a_u u)(sum b_v v)`.
fn group_product(w: &CoxeterSystem, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let small = |v: &[BigInt]| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>();
    let nz = |v: &[BigInt]| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect::<Vec<_>>();
    let (sa, sb) = (nz(a), nz(b));
    if let (Some(a64), Some(b64)) = (small(a), small(b)) {
        let mut acc = vec![0i128; w.order()];
        let mut ok = true;
        'outer: for &u in &sa {
            for &v in &sb {
                let t = a64[u] as i128 * b64[v] as i128;
                let slot = &mut acc[w.mul(u, v)];
                match slot.checked_add(t) {
                    Some(s) => *slot = s,
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return acc.into_iter().map(BigInt::from).collect();
        }
    }
    let mut acc = vec![BigInt::zero(); w.order()];
    for &u in &sa {
        for &v in &sb {
            acc[w.mul(u, v)] += &a[u] * &b[v];
        }
    }
    acc
}

/// An element of `Σ(W)` with coordinates in one of the three standard bases.
#[derive(Clone)]
pub struct DescentVector {
    algebra: Arc<DescentAlgebra>,
    basis: Basis,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for DescentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DescentVector({}: {})", self.algebra.system.label(), self)
    }
}

impl DescentVector {
    pub fn algebra(&self) -> &Arc<DescentAlgebra> {
        &self.algebra
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Coordinates in the current basis, indexed by subset mask.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coordinate on `set` in the current basis.
    pub fn coeff(&self, set: Subset) -> Rational {
        self.coeffs.get(set.index()).cloned().unwrap_or_else(Rational::zero)
    }

    /// `xi_I`, the x-basis coordinate.
    pub fn xi(&self, set: Subset) -> Rational {
        self.x_coords()[set.index()].clone()
    }

    pub fn x_coords(&self) -> Vec<Rational> {
        self.to_basis(Basis::X).coeffs
    }

    pub fn x_integers(&self) -> Vec<BigInt> {
        clear_denominators(&self.x_coords())
    }

    pub fn to_basis(&self, target: Basis) -> DescentVector {
        if target == self.basis {
            return self.clone();
        }
        let r = self.algebra.rank();
        let mut v = self.coeffs.clone();
        match self.basis {
            Basis::X => {}
            Basis::Y => transform_down(&mut v, r, &rat(-1)),
            Basis::XPrime => transform_up(&mut v, r, &Rational::new(BigInt::from(-1), BigInt::from(2))),
        }
        match target {
            Basis::X => {}
            Basis::Y => transform_down(&mut v, r, &rat(1)),
            Basis::XPrime => transform_up(&mut v, r, &Rational::new(BigInt::from(1), BigInt::from(2))),
        }
        DescentVector { algebra: Arc::clone(&self.algebra), basis: target, coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonnegative coordinates in the x-basis.
    pub fn is_positive(&self) -> bool {
        self.x_coords().iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> DescentVector {
        DescentVector {
            algebra: Arc::clone(&self.algebra),
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn try_mul(&self, other: &DescentVector) -> Result<DescentVector> {
        self.algebra.multiply(self, other)
    }

    pub fn pow(&self, n: u32) -> DescentVector {
        let mut out = self.algebra.unit();
        for _ in 0..n {
            out = self * &out;
        }
        out
    }

    fn combine(&self, other: &DescentVector, sign: i64) -> DescentVector {
        assert!(self.algebra.same_as(&other.algebra), "operands belong to different descent algebras");
        let (basis, a, b) = if self.basis == other.basis {
            (self.basis, self.coeffs.clone(), other.coeffs.clone())
        } else {
            (Basis::X, self.x_coords(), other.x_coords())
        };
        let coeffs = a.into_iter().zip(b).map(|(p, q)| if sign > 0 { p + q } else { p - q }).collect();
        DescentVector { algebra: Arc::clone(&self.algebra), basis, coeffs }
    }
}

impl PartialEq for DescentVector {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.x_coords() == other.x_coords()
    }
}

impl Add for &DescentVector {
    type Output = DescentVector;
    fn add(self, o: &DescentVector) -> DescentVector {
        self.combine(o, 1)
    }
}

impl Sub for &DescentVector {
    type Output = DescentVector;
    fn sub(self, o: &DescentVector) -> DescentVector {
        self.combine(o, -1)
    }
}

impl Neg for &DescentVector {
    type Output = DescentVector;
    fn neg(self) -> DescentVector {
        self.scale(&rat(-1))
    }
}

impl Mul for &DescentVector {
    type Output = DescentVector;
    /// Panics when the operands live in different algebras; see [`DescentVector::try_mul`].
    fn mul(self, o: &DescentVector) -> DescentVector {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DescentVector {
            type Output = DescentVector;
            fn $m(self, o: DescentVector) -> DescentVector {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Sort key placing larger subsets first, then lexicographic by index list.
fn term_order(s: Subset) -> (std::cmp::Reverse<usize>, Vec<usize>) {
    (std::cmp::Reverse(s.len()), s.iter().collect())
}

impl fmt::Display for DescentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sys = &self.algebra.system;
        let mut terms: Vec<Subset> = power_set(sys.rank()).filter(|s| !self.coeffs[s.index()].is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|&s| term_order(s));
        for (n, s) in terms.into_iter().enumerate() {
            let c = &self.coeffs[s.index()];
            let abs = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let p = self.basis.prefix();
            if s == sys.full_set() && sys.rank() > 0 {
                write!(f, "{p}S")?;
            } else {
                write!(f, "{p}{}", sys.format_subset(s))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<DescentAlgebra> {
        DescentAlgebra::from_label("A2").unwrap()
    }

    #[test]
    fn a2_products() {
        let alg = a2();
        let s1 = alg.basis_x(Subset::singleton(0));
        let e = alg.basis_x(Subset::EMPTY);
        assert_eq!(&s1 * &s1, &s1 + &e);
        assert_eq!(&e * &e, e.scale(&rat(6)));
        assert_eq!((&s1 * &s1).to_string(), "x[1] + x[]");
        assert_eq!(alg.unit().to_string(), "xS");
    }

    #[test]
    fn y_basis_inclusion_exclusion() {
        let alg = a2();
        let y = alg.basis_y(Subset::EMPTY).to_basis(Basis::X);
        assert_eq!(y.coeffs(), &[rat(1), rat(-1), rat(-1), rat(1)]);
        assert_eq!(alg.basis_y(alg.system().full_set()), alg.unit());
    }

    #[test]
    fn constants_match_structure_sets() {
        for label in ["A3", "B3", "I2(5)", "A1xA2"] {
            let alg = DescentAlgebra::from_label(label).unwrap();
            let w = alg.system();
            for i in power_set(w.rank()) {
                for j in power_set(w.rank()) {
                    for k in power_set(w.rank()) {
                        assert_eq!(
                            alg.constants().get(i, j, k),
                            w.structure_set(i, j, k).unwrap().len() as u64,
                            "{label} {i} {j} {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn triples_round_trip() {
        let alg = DescentAlgebra::from_label("B3").unwrap();
        let t = alg.constants();
        let back = StructureConstants::from_triples(3, t.triples()).unwrap();
        assert_eq!(&back, t);
    }

    #[test]
    fn minimal_polynomials() {
        let alg = a2();
        assert_eq!(alg.minimal_polynomial(&alg.unit()).to_string(), "T - 1");
        assert_eq!(alg.minimal_polynomial(&alg.basis_x(Subset::EMPTY)).to_string(), "T^2 - 6T");
        let a = &alg.basis_x(Subset::singleton(0)) - &alg.basis_x(Subset::singleton(1));
        assert_eq!(alg.minimal_polynomial(&a).to_string(), "T^2");
    }
}
