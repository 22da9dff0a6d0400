//! Named invariant suites with machine-readable results.

use std::str::FromStr;
use std::sync::Arc;

use descent_core::automorphisms::{diagram_automorphisms, sigma0, FixedSubalgebra};
use descent_core::cartan::Irreducible;
use descent_core::linalg::{rat, Polynomial, Rational};
use descent_core::morphisms::{
    build_context, commuting_square_check, goetz_set_equality, is_self_opposed, psi_factorization, psi_k, res_bd,
    res_bd_commutes_with_restriction, res_bd_image_is_fixed_subalgebra, res_bd_mackey_identity, res_conjugation,
    res_d_image_is_fixed_subalgebra, res_decomposition, res_factorization, res_image_is_fixed, res_k,
    res_mackey_identity, res_surjective, res_transitivity, surjective_subsets,
};
use descent_core::subset::power_set;
use descent_core::{DescentAlgebra, DescentVector, Subset};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_dec5;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never counts as a failure.
    Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of instances examined.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    /// Runs `test` on every case until one returns a counterexample.
    pub fn run<T>(name: &str, cases: impl IntoIterator<Item = T>, mut test: impl FnMut(&T) -> Option<Value>) -> Check {
        let mut n = 0;
        for case in cases {
            n += 1;
            if let Some(ce) = test(&case) {
                return Check { name: name.into(), status: Status::Fail, cases: n, counterexample: Some(ce), detail: None };
            }
        }
        Check { name: name.into(), status: Status::Pass, cases: n, counterexample: None, detail: None }
    }

    pub fn single(name: &str, ok: bool, detail: Value) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        let (counterexample, detail) = if ok { (None, Some(detail)) } else { (Some(detail), None) };
        Check { name: name.into(), status, cases: 1, counterexample, detail }
    }

    pub fn report(name: &str, detail: Value) -> Check {
        Check { name: name.into(), status: Status::Report, cases: 1, counterexample: None, detail: Some(detail) }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

fn unless(ok: bool, ce: impl FnOnce() -> Value) -> Option<Value> {
    if ok {
        None
    } else {
        Some(ce())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: Suite, a: &DescentAlgebra, seed: u64, checks: Vec<Check>) -> Self {
        Report {
            suite: suite.name().into(),
            type_label: a.system().label().into(),
            seed,
            passed: checks.iter().all(|c| !c.failed()),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    SolomonOracle,
    Positivity,
    Morphisms,
    LoewyBounds,
    BhsSymmetry,
    BTauQuestion,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::SolomonOracle,
        Suite::Positivity,
        Suite::Morphisms,
        Suite::LoewyBounds,
        Suite::BhsSymmetry,
        Suite::BTauQuestion,
    ];
    pub const NAMES: [&'static str; 6] =
        ["solomon-oracle", "positivity", "morphisms", "loewy-bounds", "bhs-symmetry", "b-tau-question"];

    pub fn name(self) -> &'static str {
        Self::NAMES[Self::ALL.iter().position(|&s| s == self).unwrap()]
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        Self::NAMES
            .iter()
            .position(|&n| n == s)
            .map(|k| Self::ALL[k])
            .ok_or_else(|| CliError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    /// Random elements drawn by the positivity suite.
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: DEFAULT_SEED, samples: DEFAULT_SAMPLES }
    }
}

pub fn run(suite: Suite, a: &Arc<DescentAlgebra>, opts: Options) -> Result<Report> {
    let checks = match suite {
        Suite::SolomonOracle => solomon_oracle(a),
        Suite::Positivity => {
            let mut c = positivity(a, opts);
            c.extend(counterexamples(a));
            c
        }
        Suite::Morphisms => morphisms(a)?,
        Suite::LoewyBounds => loewy_bounds(a)?,
        Suite::BhsSymmetry => vec![bhs_symmetry(a)],
        Suite::BTauQuestion => vec![b_tau_question(a)?],
    };
    Ok(Report::new(suite, a, opts.seed, checks))
}

fn fmt_set(a: &DescentAlgebra, s: Subset) -> String {
    a.system().format_subset(s)
}

fn pairs(r: usize) -> impl Iterator<Item = (Subset, Subset)> {
    power_set(r).flat_map(move |i| power_set(r).map(move |j| (i, j)))
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

fn single_type(a: &DescentAlgebra) -> Option<Irreducible> {
    match a.system().cartan_type().0[..] {
        [t] => Some(t),
        _ => None,
    }
}

pub fn solomon_oracle(a: &Arc<DescentAlgebra>) -> Vec<Check> {
    let check = Check::run("oracle_matches_structure_constants", pairs(a.rank()), |&(i, j)| {
        let (x, y) = (a.basis_x(i), a.basis_x(j));
        let fast = &x * &y;
        let (left, right) = (fmt_set(a, i), fmt_set(a, j));
        match a.oracle_multiply(&x, &y) {
            Ok(slow) if slow == fast => None,
            Ok(slow) => Some(json!({"left": left, "right": right, "multiply": fast.to_string(), "oracle": slow.to_string()})),
            Err(e) => Some(json!({"left": left, "right": right, "error": e.to_string()})),
        }
    });
    vec![check]
}

/// Deterministic stream per (seed, type).
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mix = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ mix)
}

/// Nonzero element with x-coordinates drawn uniformly from `0..=9`.
pub fn random_positive(a: &Arc<DescentAlgebra>, rng: &mut impl Rng) -> DescentVector {
    loop {
        let c: Vec<i64> = (0..a.dim()).map(|_| rng.gen_range(0..=9)).collect();
        if c.iter().any(|&v| v != 0) {
            return a.from_x(c.into_iter().map(rat).collect());
        }
    }
}

fn coords(v: &DescentVector) -> Value {
    json!(v.x_coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn positivity(a: &Arc<DescentAlgebra>, opts: Options) -> Vec<Check> {
    let mut rng = rng_for(opts.seed, a.system().label());
    let xs: Vec<DescentVector> = (0..opts.samples).map(|_| random_positive(a, &mut rng)).collect();
    let sq: Vec<DescentVector> = xs.iter().map(|x| x.pow(2)).collect();
    let ix = 0..xs.len();
    let full = a.system().full_set();
    vec![
        Check::run("minimal_polynomial_square_free", ix.clone(), |&k| {
            let f = a.minimal_polynomial(&xs[k]);
            unless(f.is_square_free(), || json!({"a": coords(&xs[k]), "minimal_polynomial": f.to_string()}))
        }),
        Check::run("right_ideal_of_square", ix.clone(), |&k| {
            unless(a.right_ideal(&sq[k]) == a.right_ideal(&xs[k]), || json!({"a": coords(&xs[k])}))
        }),
        Check::run("left_ideal_of_square", ix.clone(), |&k| {
            unless(a.left_ideal(&sq[k]) == a.left_ideal(&xs[k]), || json!({"a": coords(&xs[k])}))
        }),
        Check::run("centralizer_of_square", ix.clone(), |&k| {
            unless(a.centralizer(&sq[k]) == a.centralizer(&xs[k]), || json!({"a": coords(&xs[k])}))
        }),
        Check::run("right_ideal_is_saturated_span", ix.clone(), |&k| {
            let family = a.saturated_family(&xs[k], true);
            unless(a.right_ideal(&xs[k]) == a.family_span(&family), || {
                json!({"a": coords(&xs[k]), "family": family.iter().map(|&s| fmt_set(a, s)).collect::<Vec<_>>()})
            })
        }),
        Check::run("tau_decreases_along_inclusion", ix.clone(), |&k| {
            let tau = a.tau(&xs[k]);
            let at = |s: Subset| tau.get(a.shapes().class_of(s)).clone();
            let bad = power_set(a.rank()).find_map(|big| big.subsets().find(|&j| at(big) > at(j)).map(|j| (j, big)));
            bad.map(|(j, big)| json!({"a": coords(&xs[k]), "subset": fmt_set(a, j), "superset": fmt_set(a, big)}))
        }),
        Check::run("positive_cone_closed", ix.clone(), |&k| {
            let (x, y) = (&xs[k], &xs[(k + 1) % xs.len()]);
            unless((x + y).is_positive() && (x * y).is_positive(), || json!({"a": coords(x), "b": coords(y)}))
        }),
        Check::run("invertible_iff_top_coefficient_positive", ix, |&k| {
            let top = xs[k].xi(full) > rat(0);
            unless(a.is_invertible(&xs[k]) == top, || json!({"a": coords(&xs[k])}))
        }),
    ]
}

/// Examples showing the positivity hypothesis cannot be dropped (types `A2` and `A3` only).
pub fn counterexamples(a: &Arc<DescentAlgebra>) -> Vec<Check> {
    let set = |ix: &[usize]| Subset::from_indices(ix.iter().copied());
    match a.system().label() {
        "A2" => {
            let nil = &a.basis_x(set(&[0])) - &a.basis_x(set(&[1]));
            let right = a.right_ideal(&nil);
            let saturated = a.family_span(&a.saturated_family(&nil, true));
            let radical_line = a.radical().dim() == 1 && a.radical().contains(&nil.x_integers());
            let first = Check::single(
                "radical_element_right_ideal_not_saturated",
                radical_line && right.dim() == 1 && right != saturated,
                json!({"a": nil.to_string(), "right_ideal_dim": right.dim(), "saturated_span_dim": saturated.dim()}),
            );

            let b = &a.unit() - &a.basis_x(set(&[1]));
            let top = b.xi(a.system().full_set());
            let second = Check::single(
                "positive_top_coefficient_not_invertible",
                top > rat(0) && !a.is_invertible(&b),
                json!({"a": b.to_string(), "xi_S": top.to_string(), "invertible": a.is_invertible(&b)}),
            );

            let p = a.basis_x(set(&[0]));
            let sum = a.right_ideal(&p).sum(&a.right_ideal(&-&p));
            let third = Check::single(
                "right_ideals_not_additive",
                sum == a.right_ideal(&p) && !sum.is_zero() && a.right_ideal(&(&p + &-&p)).is_zero(),
                json!({"a": p.to_string(), "sum_dim": sum.dim()}),
            );

            let f = a.minimal_polynomial(&nil);
            let n = (1..=a.dim() as u32 + 1).find(|&k| nil.pow(k).is_zero()).unwrap_or(0);
            let t_n = {
                let mut c = vec![Rational::zero(); n as usize + 1];
                c[n as usize] = rat(1);
                Polynomial::new(c)
            };
            let ok = n >= 2
                && f == t_n
                && !f.is_square_free()
                && !a.right_ideal(&nil).is_zero()
                && !a.left_ideal(&nil).is_zero()
                && !a.centralizer(&nil).is_full();
            let fourth = Check::single(
                "radical_element_minimal_polynomial_is_power_of_t",
                ok,
                json!({"a": nil.to_string(), "minimal_polynomial": f.to_string(), "n": n}),
            );
            vec![first, second, third, fourth]
        }
        "A3" => {
            let x = &a.basis_x(set(&[0])) - &a.basis_x(set(&[1, 2]));
            let probe = &a.basis_x(set(&[1])) - &a.basis_x(set(&[2]));
            let (in_left, in_right) =
                (a.left_ideal(&x).contains(&probe.x_integers()), a.right_ideal(&x).contains(&probe.x_integers()));
            vec![Check::single(
                "left_ideal_not_saturated",
                in_left && !in_right,
                json!({"a": x.to_string(), "probe": probe.to_string(), "in_left_ideal": in_left, "in_right_ideal": in_right}),
            )]
        }
        _ => Vec::new(),
    }
}

fn expected_surjective(a: &DescentAlgebra) -> Option<Vec<Subset>> {
    let parse = |s: &&str| Subset::from_indices(s.chars().map(|c| c.to_digit(10).unwrap() as usize - 1));
    let list: &[&str] = match single_type(a)? {
        Irreducible::F4 => &["1234", "123", "234", "13", "14", "23", "24", "1", "2", "3", "4", ""],
        Irreducible::H(4) => &["1234", "123", "1", "2", "3", "4", ""],
        Irreducible::E(6) | Irreducible::H(3) | Irreducible::I2(6) => {
            let r = a.rank();
            return Some(power_set(r).filter(|k| [0, 1, r].contains(&k.len())).collect());
        }
        _ => return None,
    };
    let mut v: Vec<Subset> = list.iter().map(parse).collect();
    v.sort();
    Some(v)
}

/// Subsets `K` with `Res_K` surjective, compared with the known lists where there is one.
pub fn surjectivity_classification(a: &Arc<DescentAlgebra>) -> Result<Check> {
    let names = |v: &[Subset]| v.iter().map(|&s| fmt_set(a, s)).collect::<Vec<_>>();
    let mut computed = surjective_subsets(a)?;
    computed.sort();
    Ok(match expected_surjective(a) {
        Some(expected) => Check::single(
            "surjective_restrictions_match_classification",
            computed == expected,
            json!({"computed": names(&computed), "expected": names(&expected)}),
        ),
        None => Check::report("surjective_restrictions", json!(names(&computed))),
    })
}

pub fn morphisms(a: &Arc<DescentAlgebra>) -> Result<Vec<Check>> {
    let r = a.rank();
    let w = a.system();
    let subsets: Vec<Subset> = power_set(r).collect();
    let res: Vec<_> = subsets.iter().map(|&k| res_k(a, k)).collect::<descent_core::Result<_>>()?;
    let on_k = |name: &str, f: &dyn Fn(usize) -> bool| {
        Check::run(name, 0..subsets.len(), |&k| unless(f(k), || json!({"K": fmt_set(a, subsets[k])})))
    };
    let mut checks = vec![
        on_k("res_preserves_unit", &|k| res[k].preserves_unit()),
        on_k("res_mackey_identity", &|k| res_mackey_identity(&res[k])),
        on_k("res_multiplicative", &|k| res[k].is_multiplicative()),
        on_k("res_decomposition", &|k| res_decomposition(&res[k])),
        on_k("res_character_factorization", &|k| res_factorization(&res[k])),
        on_k("res_image_in_fixed_points", &|k| res_image_is_fixed(&res[k])),
    ];
    let nested: Vec<(Subset, Subset)> =
        pairs(r).filter(|&(k, l)| k.is_subset_of(l)).collect();
    checks.push(Check::run("res_transitivity", nested.iter(), |&&(k, l)| match res_transitivity(a, k, l) {
        Ok(true) => None,
        Ok(false) => Some(json!({"K": fmt_set(a, k), "L": fmt_set(a, l)})),
        Err(e) => Some(json!({"K": fmt_set(a, k), "L": fmt_set(a, l), "error": e.to_string()})),
    }));
    let conjugate: Vec<(Subset, Subset)> =
        pairs(r).filter(|&(k, l)| a.shapes().equivalent(k, l)).collect();
    checks.push(Check::run("res_conjugate_subsets", conjugate.iter(), |&&(k, l)| match res_conjugation(a, k, l) {
        Ok(Some(true)) => None,
        other => Some(json!({"K": fmt_set(a, k), "K'": fmt_set(a, l), "result": format!("{other:?}")})),
    }));

    let reports = subsets.iter().map(|&k| res_surjective(a, k)).collect::<descent_core::Result<Vec<_>>>()?;
    checks.push(Check::run("surjectivity_criteria_agree", reports.iter(), |rep| {
        unless(rep.is_consistent() && rep.necessary_conditions_hold(), || {
            json!({"K": fmt_set(a, rep.k), "surjective": rep.surjective, "image_rank": rep.image_rank,
                   "pi_injective": rep.pi_injective, "normalizer_acts_trivially": rep.normalizer_acts_trivially})
        })
    }));
    checks.push(surjectivity_classification(a)?);

    match single_type(a) {
        Some(Irreducible::B(n)) if n >= 2 => {
            let bd = res_bd(a)?;
            checks.push(Check::single("res_bd_preserves_unit", bd.preserves_unit(), json!({"n": n})));
            checks.push(Check::single("res_bd_multiplicative", bd.is_multiplicative(), json!({"n": n})));
            checks.push(Check::single(
                "res_bd_image_is_fixed_subalgebra",
                res_bd_image_is_fixed_subalgebra(&bd)?,
                json!({"n": n}),
            ));
            if n <= 4 {
                checks.push(Check::single("res_bd_mackey_identity", res_bd_mackey_identity(&bd), json!({"n": n})));
            }
            if n >= 3 {
                checks.push(Check::single(
                    "res_bd_commutes_with_restriction",
                    res_bd_commutes_with_restriction(&bd)?,
                    json!({"n": n}),
                ));
                let ctx = build_context(w, Subset::singleton(0))?;
                checks.push(Check::single(
                    "quotient_structure_sets_match",
                    goetz_set_equality(w, &ctx)?,
                    json!({"K": fmt_set(a, ctx.k()), "quotient": ctx.system().label()}),
                ));
            }
        }
        Some(Irreducible::D(n)) if n >= 3 => checks.push(Check::single(
            "res_d_image_is_fixed_subalgebra",
            res_d_image_is_fixed_subalgebra(a)?,
            json!({"n": n}),
        )),
        _ => {}
    }

    let opposed: Vec<Subset> =
        subsets.iter().copied().filter(|&k| is_self_opposed(w, k).unwrap_or(false)).collect();
    let quotients = opposed.iter().map(|&k| psi_k(a, k)).collect::<descent_core::Result<Vec<_>>>()?;
    let psi_case = |name: &str, f: &dyn Fn(usize) -> bool| {
        Check::run(name, 0..opposed.len(), |&k| unless(f(k), || json!({"K": fmt_set(a, opposed[k])})))
    };
    checks.push(psi_case("quotient_is_coxeter_system", &|k| quotients[k].1.verify_structure(w)));
    checks.push(psi_case("psi_surjective_and_unital", &|k| {
        quotients[k].0.is_surjective() && quotients[k].0.preserves_unit()
    }));
    checks.push(psi_case("psi_multiplicative", &|k| quotients[k].0.is_multiplicative()));
    checks.push(psi_case("psi_character_factorization", &|k| psi_factorization(&quotients[k].0, &quotients[k].1)));
    let squares: Vec<(Subset, Subset)> = opposed
        .iter()
        .flat_map(|&k| subsets.iter().filter(move |l| k.is_subset_of(**l)).map(move |&l| (k, l)))
        .collect();
    checks.push(Check::run("psi_restriction_square_commutes", squares.iter(), |&&(k, l)| {
        match commuting_square_check(a, k, l) {
            Ok(true) => None,
            other => Some(json!({"K": fmt_set(a, k), "L": fmt_set(a, l), "result": format!("{other:?}")})),
        }
    }));
    Ok(checks)
}

/// Number of partitions of `n`.
pub fn partitions(n: usize) -> u64 {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

fn partition_sum(upto: usize) -> u64 {
    (0..=upto).map(partitions).sum()
}

pub fn loewy_bounds(a: &Arc<DescentAlgebra>) -> Result<Vec<Check>> {
    let r = a.rank();
    let w = a.system();
    let profile = a.loewy_profile();
    let ll = profile.loewy_length;
    let irreducible = w.is_irreducible();
    let mut checks = vec![Check::single(
        "loewy_length_at_most_rank",
        ll <= r,
        json!({"loewy_length": ll, "rank": r, "dims": profile.dims}),
    )];
    if irreducible {
        checks.push(Check::single(
            "loewy_length_at_least_half_rank",
            ceil_half(r) <= ll,
            json!({"loewy_length": ll, "bound": ceil_half(r)}),
        ));
    }

    let mut fixed = Vec::new();
    for sigma in diagram_automorphisms(w) {
        let perm = sigma.permutation().to_vec();
        let order = sigma.order();
        let f = FixedSubalgebra::new(a, sigma)?;
        fixed.push((perm, order, f.shape_orbits().len(), f.loewy_profile()));
    }
    checks.push(Check::run("orbit_count_is_d0_minus_d1", fixed.iter(), |(perm, _, orbits, p)| {
        let d1 = p.dims.get(1).copied().unwrap_or(0);
        unless(p.dims[0] - d1 == *orbits, || json!({"sigma": perm, "orbits": orbits, "dims": p.dims}))
    }));
    if irreducible {
        let f = FixedSubalgebra::new(a, sigma0(w))?;
        let l0 = f.loewy_profile().loewy_length;
        checks.push(Check::single(
            "sigma0_fixed_loewy_length_is_half_rank",
            l0 == ceil_half(r),
            json!({"loewy_length": l0, "expected": ceil_half(r)}),
        ));
        if w.is_w0_central() {
            checks.push(Check::single(
                "central_w0_loewy_length_is_half_rank",
                ll == ceil_half(r),
                json!({"loewy_length": ll, "expected": ceil_half(r)}),
            ));
        }
    }
    let of_order = |k: usize| fixed.iter().find(|f| f.1 == k).map(|f| (f.2, f.3.loewy_length));
    let shapes = a.shapes().len() as u64;

    match single_type(a) {
        Some(Irreducible::A(n)) => {
            checks.push(Check::single("type_a_loewy_length_is_rank", ll == n, json!({"loewy_length": ll, "n": n})));
            if let Some((_, l2)) = of_order(2) {
                checks.push(Check::single(
                    "type_a_twisted_loewy_length",
                    l2 == ceil_half(n),
                    json!({"loewy_length": l2, "expected": ceil_half(n)}),
                ));
            }
            checks.push(Check::report(
                "type_a_shape_count",
                json!({"computed": shapes, "printed_p_n": partitions(n), "p_n_plus_1": partitions(n + 1),
                       "matches_printed": shapes == partitions(n)}),
            ));
        }
        Some(Irreducible::B(n)) => {
            checks.push(Check::single(
                "type_b_loewy_length",
                ll == ceil_half(n),
                json!({"loewy_length": ll, "expected": ceil_half(n)}),
            ));
            checks.push(Check::single(
                "type_b_shape_count",
                shapes == partition_sum(n),
                json!({"computed": shapes, "expected": partition_sum(n)}),
            ));
        }
        Some(Irreducible::D(n)) if n >= 4 => {
            let m = n / 2;
            let twisted = of_order(2);
            if n % 2 == 0 {
                let expected = partitions(m) + partitions(n) + partition_sum(n - 2);
                checks.push(Check::single(
                    "type_d_shape_count",
                    shapes == expected,
                    json!({"computed": shapes, "expected": expected}),
                ));
                checks.push(Check::single("type_d_even_loewy_length", ll == m, json!({"loewy_length": ll, "expected": m})));
                if let Some((orbits, l2)) = twisted {
                    let expected = partitions(n) + partition_sum(n - 2);
                    checks.push(Check::single(
                        "type_d_even_twisted_row",
                        l2 == m && orbits as u64 == expected,
                        json!({"loewy_length": l2, "orbits": orbits, "expected_loewy_length": m, "expected_orbits": expected}),
                    ));
                }
            } else {
                let printed = partitions(n - 1) + partition_sum(n - 3);
                let shifted = partitions(n) + partition_sum(n - 2);
                let orbits2 = twisted.map(|(orbits, _)| orbits);
                checks.push(Check::report(
                    "type_d_odd_shape_count",
                    json!({"computed": shapes, "twisted_orbits": orbits2, "printed_formula": printed,
                           "p_n_plus_sum_to_n_minus_2": shifted, "matches_printed": shapes == printed}),
                ));
                let bound = (n + 3) / 2;
                checks.push(Check::single(
                    "type_d_odd_lower_bound",
                    ll >= bound,
                    json!({"loewy_length": ll, "bound": bound, "equality": ll == bound}),
                ));
                if let Some((_, l2)) = twisted {
                    checks.push(Check::single(
                        "type_d_odd_twisted_loewy_length",
                        l2 == m + 1,
                        json!({"loewy_length": l2, "expected": m + 1}),
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(checks)
}

/// `θ(x_I)` evaluated on `x_J` equals `θ(x_J)` evaluated on `x_I`.
pub fn bhs_symmetry(a: &Arc<DescentAlgebra>) -> Check {
    let w = a.system();
    let r = a.rank();
    let dim = a.dim();
    // by_mask[I][m] = sum of θ(x_I)(w) over w with R(w) = m, then summed over supersets.
    let table: Vec<Vec<Rational>> = power_set(r)
        .map(|i| {
            let mut by_mask = vec![Rational::zero(); dim];
            for (x, v) in a.theta(&a.basis_x(i)).into_iter().enumerate() {
                by_mask[w.right_ascents(x).index()] += v;
            }
            for b in 0..r {
                for m in 0..dim {
                    if m >> b & 1 == 0 {
                        let t = by_mask[m | 1 << b].clone();
                        by_mask[m] += t;
                    }
                }
            }
            by_mask
        })
        .collect();
    let upper: Vec<(Subset, Subset)> = pairs(r).filter(|(i, j)| i.index() <= j.index()).collect();
    Check::run("character_pairing_symmetric", upper.iter(), |&&(i, j)| {
        let (p, q) = (&table[i.index()][j.index()], &table[j.index()][i.index()]);
        unless(p == q, || json!({"I": fmt_set(a, i), "J": fmt_set(a, j), "theta_I_at_J": p.to_string(), "theta_J_at_I": q.to_string()}))
    })
}

pub fn b_tau_question(a: &Arc<DescentAlgebra>) -> Result<Check> {
    let rep = a.b_tau_report()?;
    Ok(Check::report(
        "radical_power_is_tau_line",
        json!({"n": rep.n, "r": rep.r, "radical_power_dim": rep.radical_power_dim,
               "contains_tau": rep.contains_tau, "equals_tau_line": rep.equals_tau_line}),
    ))
}

