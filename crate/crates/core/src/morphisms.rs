//! Restriction morphisms `Res_K`, the type `B -> D` restriction `Res_n`, and
//! the quotient maps `ψ_K` attached to self-opposed subsets.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{DescentAlgebra, DescentVector};
use crate::automorphisms::{DiagramAutomorphism, FixedSubalgebra};
use crate::cartan::Irreducible;
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::linalg::{Rational, Subspace};
use crate::subset::{power_set, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// `Res_K : Σ(W) -> Σ(W_K)`.
    ResK,
    /// `Res_n : Σ(B_n) -> Σ(D_n)`.
    ResBD,
    /// `ψ_K : Σ(W) -> Σ(W(K))`.
    PsiK,
    Composite,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::ResK => "RES_K",
            MorphismKind::ResBD => "RES_BD",
            MorphismKind::PsiK => "PSI_K",
            MorphismKind::Composite => "COMPOSITE",
        })
    }
}

/// The defining datum of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismData {
    Subset(Subset),
    Rank(usize),
    None,
}

/// A linear map between descent algebras, stored by the images of the `x_I`.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    domain: Arc<DescentAlgebra>,
    codomain: Arc<DescentAlgebra>,
    images: Vec<Vec<Rational>>,
    kind: MorphismKind,
    data: MorphismData,
}

fn integer_images(images: Vec<Vec<u64>>) -> Vec<Vec<Rational>> {
    images
        .into_iter()
        .map(|v| v.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect())
        .collect()
}

impl AlgebraMorphism {
    pub fn domain(&self) -> &Arc<DescentAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DescentAlgebra> {
        &self.codomain
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn data(&self) -> MorphismData {
        self.data
    }

    /// x-coordinates of the image of `x_I`.
    pub fn image_of(&self, i: Subset) -> &[Rational] {
        &self.images[i.index()]
    }

    /// The matrix in the two x-bases (rows: codomain subsets, columns: domain subsets).
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.codomain.dim()).map(|r| self.images.iter().map(|c| c[r].clone()).collect()).collect()
    }

    fn map_coords(&self, xs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.codomain.dim()];
        for (c, img) in xs.iter().zip(&self.images).filter(|(c, _)| !c.is_zero()) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += c * v;
            }
        }
        out
    }

    pub fn apply(&self, v: &DescentVector) -> Result<DescentVector> {
        if !self.domain.same_as(v.algebra()) {
            return Err(Error::SystemMismatch(
                self.domain.system().label().into(),
                v.algebra().system().label().into(),
            ));
        }
        Ok(self.codomain.from_x(self.map_coords(&v.x_coords())))
    }

    pub fn image(&self) -> Subspace {
        Subspace::spanned_by_rational(self.codomain.dim(), self.images.iter().map(Vec::as_slice))
    }

    pub fn kernel(&self) -> Subspace {
        let n = self.domain.dim();
        Subspace::spanned_by_rational(n, crate::linalg::nullspace(&self.matrix(), n).iter().map(Vec::as_slice))
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    pub fn preserves_unit(&self) -> bool {
        let unit = self.domain.system().full_set();
        let target = self.codomain.system().full_set();
        self.image_of(unit)
            .iter()
            .enumerate()
            .all(|(k, c)| if k == target.index() { c.is_one() } else { c.is_zero() })
    }

    /// The first pair `(I, J)` with `φ(x_I x_J) != φ(x_I) φ(x_J)`, if any.
    pub fn multiplicativity_counterexample(
        &self,
        pairs: impl IntoIterator<Item = (Subset, Subset)>,
    ) -> Option<(Subset, Subset)> {
        let consts = self.domain.constants();
        pairs.into_iter().find(|&(i, j)| {
            let mut lhs = vec![Rational::zero(); self.codomain.dim()];
            for &(k, c) in consts.product(i, j) {
                let c = Rational::from_integer(BigInt::from(c));
                for (o, v) in lhs.iter_mut().zip(&self.images[k as usize]) {
                    *o += &c * v;
                }
            }
            lhs != self.codomain.mul_coords(self.image_of(i), self.image_of(j))
        })
    }

    /// Checks multiplicativity on every ordered pair of basis elements.
    pub fn is_multiplicative(&self) -> bool {
        let r = self.domain.rank();
        self.multiplicativity_counterexample(power_set(r).flat_map(|i| power_set(r).map(move |j| (i, j))))
            .is_none()
    }

    /// `next ∘ self`. The codomain of `self` and the domain of `next` must share a Coxeter matrix.
    pub fn then(&self, next: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if self.codomain.system().coxeter_matrix() != next.domain.system().coxeter_matrix() {
            return Err(Error::SystemMismatch(
                self.codomain.system().label().into(),
                next.domain.system().label().into(),
            ));
        }
        Ok(AlgebraMorphism {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&next.codomain),
            images: self.images.iter().map(|v| next.map_coords(v)).collect(),
            kind: MorphismKind::Composite,
            data: MorphismData::None,
        })
    }

    /// Equal matrices between algebras with the same Coxeter matrices.
    pub fn same_matrix(&self, other: &AlgebraMorphism) -> bool {
        self.domain.system().coxeter_matrix() == other.domain.system().coxeter_matrix()
            && self.codomain.system().coxeter_matrix() == other.codomain.system().coxeter_matrix()
            && self.images == other.images
    }
}

fn subset_arg(w: &CoxeterSystem, k: Subset) -> Result<Subset> {
    w.check_subset(k)
}

/// `Res_K(x_I) = sum_{d in X_KI} x^K_{K ∩ dId^-1}`, with `Σ(W_K)` built standalone.
pub fn res_k(algebra: &Arc<DescentAlgebra>, k: Subset) -> Result<AlgebraMorphism> {
    let w = algebra.system();
    let k = subset_arg(w, k)?;
    let codomain = DescentAlgebra::new(w.parabolic(k)?);
    let mut images = vec![vec![0u64; 1 << k.len()]; algebra.dim()];
    for d in 0..w.order() {
        if !k.is_subset_of(w.left_ascents(d)) {
            continue;
        }
        let ra = w.right_ascents(d);
        let lands: Vec<(usize, usize)> = ra
            .iter()
            .filter_map(|s| w.conjugate_simple(d, s).filter(|&t| k.contains(t)).map(|t| (s, t)))
            .collect();
        for i in ra.subsets() {
            let l = Subset::from_indices(lands.iter().filter(|(s, _)| i.contains(*s)).map(|&(_, t)| t));
            images[i.index()][l.compress(k).index()] += 1;
        }
    }
    Ok(AlgebraMorphism {
        domain: Arc::clone(algebra),
        codomain,
        images: integer_images(images),
        kind: MorphismKind::ResK,
        data: MorphismData::Subset(k),
    })
}

fn defining_subset(res: &AlgebraMorphism) -> Subset {
    match res.data {
        MorphismData::Subset(k) => k,
        _ => panic!("morphism is not attached to a subset"),
    }
}

/// `μ_K : Σ(W_K) -> Σ(W)`, `x^K_L -> x_K x^K_L = x_L`.
pub fn embed_parabolic(algebra: &Arc<DescentAlgebra>, k: Subset, coords: &[Rational]) -> DescentVector {
    let mut out = vec![Rational::zero(); algebra.dim()];
    for l in power_set(k.len()) {
        out[l.expand(k).index()] = coords[l.index()].clone();
    }
    algebra.from_x(out)
}

/// `x_K Res_K(x) = x x_K` on every `x_I`.
pub fn res_mackey_identity(res: &AlgebraMorphism) -> bool {
    let k = defining_subset(res);
    let alg = &res.domain;
    let xk = alg.basis_x(k);
    power_set(alg.rank()).all(|i| embed_parabolic(alg, k, res.image_of(i)) == &alg.basis_x(i) * &xk)
}

/// `Res_K = Res^L_K ∘ Res_L` for `K ⊆ L`.
pub fn res_transitivity(algebra: &Arc<DescentAlgebra>, k: Subset, l: Subset) -> Result<bool> {
    if !k.is_subset_of(l) {
        return Err(Error::InvalidSubset { subset: k.bits(), rank: l.len() });
    }
    let direct = res_k(algebra, k)?;
    let res_l = res_k(algebra, l)?;
    let inner = res_k(res_l.codomain(), k.compress(l))?;
    Ok(res_l.then(&inner)?.same_matrix(&direct))
}

/// An element `d in X_{K K'}` with `d K' d^-1 = K`, if one exists.
pub fn conjugating_element(w: &CoxeterSystem, k: Subset, k2: Subset) -> Option<usize> {
    (0..w.order()).find(|&d| {
        k.is_subset_of(w.left_ascents(d))
            && k2.is_subset_of(w.right_ascents(d))
            && w.conjugate_subset(d, k2) == Some(k)
    })
}

/// `Res_K = d_* ∘ Res_{K'}`; `None` when `K` and `K'` are not conjugate.
pub fn res_conjugation(algebra: &Arc<DescentAlgebra>, k: Subset, k2: Subset) -> Result<Option<bool>> {
    let w = algebra.system();
    let Some(d) = conjugating_element(w, k, k2) else {
        return Ok(None);
    };
    let rk = res_k(algebra, k)?;
    let rk2 = res_k(algebra, k2)?;
    let transport = |coords: &[Rational]| {
        let mut out = vec![Rational::zero(); 1 << k.len()];
        for l in power_set(k2.len()) {
            let image = w.conjugate_subset(d, l.expand(k2)).expect("d conjugates K' onto K");
            out[image.compress(k).index()] = coords[l.index()].clone();
        }
        out
    };
    Ok(Some(power_set(w.rank()).all(|i| transport(rk2.image_of(i)) == rk.image_of(i))))
}

/// `Σ(W) = Ker Res_K ⊕ Σ(W) x_K` and `Ker Res_K = {x : x x_K = 0}`.
pub fn res_decomposition(res: &AlgebraMorphism) -> bool {
    let k = defining_subset(res);
    let alg = &res.domain;
    let kernel = res.kernel();
    let ideal = alg.left_ideal(&alg.basis_x(k));
    let xk = alg.basis_x(k).x_coords();
    let annihilated = kernel.basis().iter().all(|v| {
        let v: Vec<Rational> = v.iter().map(|c| Rational::from_integer(c.clone())).collect();
        alg.mul_coords(&v, &xk).iter().all(Zero::is_zero)
    });
    let right_mult: Vec<Vec<Rational>> = (0..alg.dim())
        .map(|row| {
            power_set(alg.rank())
                .map(|j| alg.mul_coords(&alg.basis_x(j).x_coords(), &xk)[row].clone())
                .collect()
        })
        .collect();
    let annihilator_dim = crate::linalg::nullspace(&right_mult, alg.dim()).len();
    annihilated
        && annihilator_dim == kernel.dim()
        && kernel.dim() + ideal.dim() == alg.dim()
        && kernel.intersection_dim(&ideal) == 0
}

/// `τ_{π_K(λ)} = τ^K_λ ∘ Res_K` for every shape `λ` of `W_K`.
pub fn res_factorization(res: &AlgebraMorphism) -> bool {
    let k = defining_subset(res);
    let (alg, sub) = (&res.domain, &res.codomain);
    sub.shapes().classes().iter().all(|sh| {
        let big = sh.canonical.expand(k);
        power_set(alg.rank()).all(|i| {
            let via_res = sub.tau_at(&sub.from_x(res.image_of(i).to_vec()), sh.canonical);
            via_res == Rational::from_integer(BigInt::from(alg.tau_basis(i, big)))
        })
    })
}

/// `W(K) = {w in X_KK : wKw^-1 = K}`.
pub fn normalizer_complement(w: &CoxeterSystem, k: Subset) -> Vec<usize> {
    (0..w.order())
        .filter(|&x| {
            k.is_subset_of(w.left_ascents(x)) && k.is_subset_of(w.right_ascents(x)) && w.conjugate_subset(x, k) == Some(k)
        })
        .collect()
}

/// The permutation of the generators of `W_K` (in compressed indexing) induced by `x in W(K)`.
fn induced_permutation(w: &CoxeterSystem, k: Subset, x: usize) -> Vec<usize> {
    k.iter()
        .map(|s| {
            let t = w.conjugate_simple(x, s).expect("x normalises K");
            Subset::singleton(t).compress(k).iter().next().expect("t lies in K")
        })
        .collect()
}

/// `im Res_K ⊆ Σ(W_K)^{W(K)}`.
pub fn res_image_is_fixed(res: &AlgebraMorphism) -> bool {
    let k = defining_subset(res);
    let w = res.domain.system();
    normalizer_complement(w, k).into_iter().all(|x| {
        let perm = induced_permutation(w, k, x);
        res.images
            .iter()
            .all(|img| power_set(k.len()).all(|l| img[l.index()] == img[l.permute(&perm).index()]))
    })
}

/// Surjectivity of `Res_K` with the quantities that characterise it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub k: Subset,
    /// `dim Σ(W) x_K = 2^|K|`.
    pub surjective: bool,
    pub image_rank: usize,
    pub left_ideal_dim: usize,
    /// `Σ(W) x_K = Σ_{P(K)}(W)`.
    pub ideal_is_family_span: bool,
    /// `π_K : Λ_K -> Λ` injective.
    pub pi_injective: bool,
    /// `W(K)` fixes every generator in `K`.
    pub normalizer_acts_trivially: bool,
}

impl SurjectivityReport {
    /// The three formulations of surjectivity agree.
    pub fn is_consistent(&self) -> bool {
        let full = 1usize << self.k.len();
        (self.image_rank == full) == self.surjective && self.ideal_is_family_span == self.surjective
    }

    /// Necessary conditions hold whenever the map is surjective.
    pub fn necessary_conditions_hold(&self) -> bool {
        !self.surjective || (self.pi_injective && self.normalizer_acts_trivially)
    }
}

pub fn res_surjective(algebra: &Arc<DescentAlgebra>, k: Subset) -> Result<SurjectivityReport> {
    let res = res_k(algebra, k)?;
    let w = algebra.system();
    let ideal = algebra.left_ideal(&algebra.basis_x(k));
    let family: Vec<Subset> = k.subsets().collect();
    let sub = res.codomain();
    let mut images: Vec<usize> = sub
        .shapes()
        .classes()
        .iter()
        .map(|sh| algebra.shapes().class_of(sh.canonical.expand(k)))
        .collect();
    images.sort_unstable();
    images.dedup();
    Ok(SurjectivityReport {
        k,
        surjective: ideal.dim() == 1 << k.len(),
        image_rank: res.rank(),
        left_ideal_dim: ideal.dim(),
        ideal_is_family_span: ideal == algebra.family_span(&family),
        pi_injective: images.len() == sub.shapes().len(),
        normalizer_acts_trivially: normalizer_complement(w, k)
            .into_iter()
            .all(|x| k.iter().all(|s| w.conjugate_simple(x, s) == Some(s))),
    })
}

/// The subsets `K` for which `Res_K` is surjective, in mask order.
pub fn surjective_subsets(algebra: &Arc<DescentAlgebra>) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for k in power_set(algebra.rank()) {
        if res_surjective(algebra, k)?.surjective {
            out.push(k);
        }
    }
    Ok(out)
}

/// For `B_n -> B_{n-1}`: `Res(x_J) ∈ α_J x_J + span{x_I : I ≺ J}` with `α_J > 0`,
/// where `≺` compares size, then index lists lexicographically (`t < s_1 < ...`).
pub fn res_triangular_positive(res: &AlgebraMorphism) -> bool {
    let k = defining_subset(res);
    let key = |s: Subset| (s.len(), s.iter().collect::<Vec<_>>());
    power_set(k.len()).all(|j| {
        let img = res.image_of(j.expand(k));
        img[j.index()].is_positive()
            && power_set(k.len()).all(|i| img[i.index()].is_zero() || key(i) <= key(j))
    })
}

fn type_b_rank(algebra: &DescentAlgebra) -> Result<usize> {
    match algebra.system().cartan_type().0[..] {
        [Irreducible::B(n)] if algebra.system().coxeter_matrix() == Irreducible::B(n).coxeter_matrix() => Ok(n),
        _ => Err(Error::WrongType { expected: "B_n".into(), got: algebra.system().label().into() }),
    }
}

/// Index in `D_n` (`s_1, s_1', s_2, ...`) of generator `j >= 1` of `B_n` (`t, s_1, s_2, ...`).
fn b_to_d(j: usize) -> usize {
    if j == 1 {
        0
    } else {
        j
    }
}

/// Builds `B_n`, `D_n` and `Res_n`.
pub fn res_bd_rank(n: usize) -> Result<AlgebraMorphism> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    res_bd(&DescentAlgebra::from_label(&format!("B{n}"))?)
}

/// `Res_n(x_I) = x_{W_I ∩ S_n'}` if `t ∈ I`, else `x_I + x_{tIt}`.
pub fn res_bd(domain: &Arc<DescentAlgebra>) -> Result<AlgebraMorphism> {
    let n = type_b_rank(domain)?;
    let codomain = DescentAlgebra::from_label(&format!("D{n}"))?;
    let mut images = vec![vec![0u64; 1 << n]; 1 << n];
    for i in power_set(n) {
        let rest = Subset::from_indices(i.iter().filter(|&j| j >= 1).map(b_to_d));
        if i.contains(0) {
            let mut image = rest;
            if i.contains(1) {
                image.insert(1);
            }
            images[i.index()][image.index()] += 1;
        } else {
            let swapped = if rest.contains(0) { rest.difference(Subset::singleton(0)).union(Subset::singleton(1)) } else { rest };
            images[i.index()][rest.index()] += 1;
            images[i.index()][swapped.index()] += 1;
        }
    }
    Ok(AlgebraMorphism {
        domain: Arc::clone(domain),
        codomain,
        images: integer_images(images),
        kind: MorphismKind::ResBD,
        data: MorphismData::Rank(n),
    })
}

/// `σ_n`, the swap `s_1 <-> s_1'` of `D_n`.
pub fn sigma_n(d: &CoxeterSystem) -> Result<DiagramAutomorphism> {
    let mut p: Vec<usize> = (0..d.rank()).collect();
    p.swap(0, 1);
    DiagramAutomorphism::new(d, p)
}

/// `x_n Res_n(x) = x x_n` in `QB_n`, with `x_n = 1 + t`.
pub fn res_bd_mackey_identity(res: &AlgebraMorphism) -> bool {
    let (b, d) = (res.domain.system(), res.codomain.system());
    let t = 0;
    let d_gens: Vec<usize> = (0..d.rank())
        .map(|g| match g {
            1 => b.word_to_element(&[0, 1, 0]),
            g => b.word_to_element(&[if g == 0 { 1 } else { g }]),
        })
        .collect();
    let embed: Vec<usize> = (0..d.order())
        .map(|u| d.word(u).iter().fold(b.identity(), |acc, &g| b.mul(acc, d_gens[g])))
        .collect();
    power_set(b.rank()).all(|i| {
        let g = res.domain.to_group_algebra(&res.domain.basis_x(i));
        let mut lhs = vec![Rational::zero(); b.order()];
        for (w, c) in g.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            lhs[w] += c;
            lhs[b.mul_gen(w, t)] += c;
        }
        let h = res.codomain.to_group_algebra(&res.codomain.from_x(res.image_of(i).to_vec()));
        let mut rhs = vec![Rational::zero(); b.order()];
        for (u, c) in h.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let x = embed[u];
            rhs[x] += c;
            rhs[b.gen_mul(t, x)] += c;
        }
        lhs == rhs
    })
}

/// `im Res_n = Σ(D_n)^{σ_n}`.
pub fn res_bd_image_is_fixed_subalgebra(res: &AlgebraMorphism) -> Result<bool> {
    let fixed = FixedSubalgebra::new(res.codomain(), sigma_n(res.codomain.system())?)?;
    Ok(res.image() == fixed.span())
}

/// `Res^{S_n'}_{S_{n-1}'} ∘ Res_n = Res_{n-1} ∘ Res^{S_n}_{S_{n-1}}`.
pub fn res_bd_commutes_with_restriction(res: &AlgebraMorphism) -> Result<bool> {
    let n = type_b_rank(&res.domain)?;
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let lower = Subset::full(n - 1);
    let left = res.then(&res_k(res.codomain(), lower)?)?;
    let down = res_k(res.domain(), lower)?;
    let right = down.then(&res_bd(down.codomain())?)?;
    Ok(left.same_matrix(&right))
}

/// The image of `Res` from `D_n` to `D_{n-1}` equals `Σ(D_{n-1})^{σ_{n-1}}`.
pub fn res_d_image_is_fixed_subalgebra(d: &Arc<DescentAlgebra>) -> Result<bool> {
    let n = d.rank();
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    let res = res_k(d, Subset::full(n - 1))?;
    let fixed = FixedSubalgebra::new(res.codomain(), sigma_n(res.codomain.system())?)?;
    Ok(res.image() == fixed.span())
}

/// Every `W`-conjugate of `K` lying inside `S` equals `K`.
pub fn is_self_opposed(w: &CoxeterSystem, k: Subset) -> Result<bool> {
    let k = subset_arg(w, k)?;
    Ok((0..w.order()).all(|x| w.conjugate_subset(x, k).is_none_or(|l| l == k)))
}

/// `(W(K), S(K))` for a self-opposed `K`, realised both inside `W` and as a standalone system.
#[derive(Debug, Clone)]
pub struct SelfOpposedContext {
    k: Subset,
    complement: Subset,
    /// `w_{K,s}` for `s ∈ S \ K`, increasing in `s`.
    generators: Vec<usize>,
    /// `W(K)` inside `W`, sorted.
    elements: Vec<usize>,
    system: Arc<CoxeterSystem>,
    /// Element of the standalone system -> element of `W`.
    embedding: Vec<usize>,
}

pub fn build_context(w: &CoxeterSystem, k: Subset) -> Result<SelfOpposedContext> {
    if !is_self_opposed(w, k)? {
        return Err(Error::NotSelfOpposed(w.format_subset(k)));
    }
    let complement = w.full_set().difference(k);
    let wk = w.longest_in(k);
    let generators: Vec<usize> = complement
        .iter()
        .map(|s| w.mul(w.longest_in(k.union(Subset::singleton(s))), wk))
        .collect();
    let r = generators.len();
    let matrix: Vec<Vec<u32>> = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| if a == b { 1 } else { w.element_order(w.mul(generators[a], generators[b])) as u32 })
                .collect()
        })
        .collect();
    let system = CoxeterSystem::from_matrix(matrix)?;
    let embedding = (0..system.order())
        .map(|u| system.word(u).iter().fold(w.identity(), |acc, &g| w.mul(acc, generators[g])))
        .collect();
    Ok(SelfOpposedContext {
        k,
        complement,
        generators,
        elements: normalizer_complement(w, k),
        system: Arc::new(system),
        embedding,
    })
}

impl SelfOpposedContext {
    pub fn k(&self) -> Subset {
        self.k
    }

    /// `w_{K,s}` for `s ∈ S \ K`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `W(K)` as elements of `W`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// `(W(K), S(K))` as a standalone system with the measured Coxeter matrix.
    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// `I(K) = {w_{K,s} : s ∈ I \ K}` for `I ⊇ K`, as a subset of `S(K)`.
    pub fn i_of(&self, i: Subset) -> Subset {
        i.difference(self.k).compress(self.complement)
    }

    /// `ϖ_K(I)`, the subset `A ⊇ K` of `S` with `A(K) = I`.
    pub fn varpi(&self, i: Subset) -> Subset {
        i.expand(self.complement).union(self.k)
    }

    /// The standalone system matches `W(K)`: the word map is a homomorphism and a
    /// bijection onto `W(K)`, and `N_W(W_K) = W(K) ⋉ W_K` by counting.
    pub fn verify_structure(&self, w: &CoxeterSystem) -> bool {
        let sys = &self.system;
        let homomorphism = (0..sys.order()).all(|u| {
            (0..sys.rank()).all(|g| self.embedding[sys.mul_gen(u, g)] == w.mul(self.embedding[u], self.generators[g]))
        });
        let mut image = self.embedding.clone();
        image.sort_unstable();
        let bijective = image.windows(2).all(|p| p[0] < p[1]) && image == self.elements;
        let wk_order = w.order() / w.min_coset_reps(self.k).map_or(1, |v| v.len());
        let normalizer = (0..w.order())
            .filter(|&x| {
                self.k.iter().all(|s| w.in_parabolic(w.mul(w.mul_gen(x, s), w.inverse(x)), self.k))
            })
            .count();
        homomorphism && bijective && normalizer == self.elements.len() * wk_order
    }
}

/// `ψ_K(x_I) = x^{(K)}_{I(K)}` if `K ⊆ I`, else `0`.
pub fn psi_k(algebra: &Arc<DescentAlgebra>, k: Subset) -> Result<(AlgebraMorphism, SelfOpposedContext)> {
    let ctx = build_context(algebra.system(), k)?;
    let codomain = DescentAlgebra::from_shared(Arc::clone(&ctx.system));
    let mut images = vec![vec![0u64; codomain.dim()]; algebra.dim()];
    for i in power_set(algebra.rank()).filter(|i| k.is_subset_of(*i)) {
        images[i.index()][ctx.i_of(i).index()] = 1;
    }
    let psi = AlgebraMorphism {
        domain: Arc::clone(algebra),
        codomain,
        images: integer_images(images),
        kind: MorphismKind::PsiK,
        data: MorphismData::Subset(k),
    };
    Ok((psi, ctx))
}

/// `X^{(K)}_{I(K) J(K) L(K)} = X_{IJL}` as sets, for all `I, J, L ⊇ K`.
pub fn goetz_set_equality(w: &CoxeterSystem, ctx: &SelfOpposedContext) -> Result<bool> {
    let sys = &ctx.system;
    let above: Vec<Subset> = power_set(w.rank()).filter(|i| ctx.k.is_subset_of(*i)).collect();
    for &i in &above {
        for &j in &above {
            for &l in &above {
                let mut inside: Vec<usize> = sys
                    .structure_set(ctx.i_of(i), ctx.i_of(j), ctx.i_of(l))?
                    .into_iter()
                    .map(|u| ctx.embedding[u])
                    .collect();
                inside.sort_unstable();
                let mut direct = w.structure_set(i, j, l)?;
                direct.sort_unstable();
                if inside != direct {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `τ_{λ(ϖ_K(I))} = τ^{(K)}_{λ_(K)(I)} ∘ ψ_K` for every `I ⊆ S(K)`.
pub fn psi_factorization(psi: &AlgebraMorphism, ctx: &SelfOpposedContext) -> bool {
    let (alg, quo) = (&psi.domain, &psi.codomain);
    power_set(quo.rank()).all(|i| {
        let big = ctx.varpi(i);
        power_set(alg.rank()).all(|j| {
            let via = quo.tau_at(&quo.from_x(psi.image_of(j).to_vec()), i);
            via == Rational::from_integer(BigInt::from(alg.tau_basis(j, big)))
        })
    })
}

/// `Res_{L(K)} ∘ ψ_K = ψ^L_K ∘ Res_L` for self-opposed `K ⊆ L`.
pub fn commuting_square_check(algebra: &Arc<DescentAlgebra>, k: Subset, l: Subset) -> Result<bool> {
    if !k.is_subset_of(l) {
        return Err(Error::InvalidSubset { subset: k.bits(), rank: l.len() });
    }
    let (psi, ctx) = psi_k(algebra, k)?;
    let left = psi.then(&res_k(psi.codomain(), ctx.i_of(l))?)?;
    let res_l = res_k(algebra, l)?;
    let (psi_l, _) = psi_k(res_l.codomain(), k.compress(l))?;
    let right = res_l.then(&psi_l)?;
    Ok(left.same_matrix(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn alg(label: &str) -> Arc<DescentAlgebra> {
        DescentAlgebra::from_label(label).unwrap()
    }

    #[test]
    fn a2_restriction_of_empty() {
        let a2 = alg("A2");
        let res = res_k(&a2, Subset::singleton(0)).unwrap();
        assert_eq!(res.image_of(Subset::EMPTY), &[rat(3), rat(0)]);
        assert!(res.preserves_unit());
    }

    #[test]
    fn restriction_to_everything_is_identity() {
        let b3 = alg("B3");
        let res = res_k(&b3, b3.system().full_set()).unwrap();
        for i in power_set(3) {
            assert_eq!(res.image_of(i), b3.basis_x(i).coeffs());
        }
    }

    #[test]
    fn res_bd_small_cases() {
        let res = res_bd_rank(3).unwrap();
        assert_eq!(res.rank(), 6);
        assert!(res.preserves_unit());
        assert!(matches!(res_bd_rank(1), Err(Error::RankTooSmall(1))));
    }

    #[test]
    fn self_opposed_examples() {
        let b3 = CoxeterSystem::from_label("B3").unwrap();
        assert!(is_self_opposed(&b3, Subset::singleton(0)).unwrap());
        let ctx = build_context(&b3, Subset::singleton(0)).unwrap();
        assert_eq!(ctx.system().coxeter_matrix(), Irreducible::B(2).coxeter_matrix());
        let a3 = CoxeterSystem::from_label("A3").unwrap();
        assert!(!is_self_opposed(&a3, Subset::singleton(1)).unwrap());
        assert!(matches!(build_context(&a3, Subset::singleton(1)), Err(Error::NotSelfOpposed(_))));
    }
}
