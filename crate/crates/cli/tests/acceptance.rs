//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use descent_cli::verify::{self, Check, Options};
use descent_cli::{table, Cache, Loader};
use descent_core::automorphisms::{sigma0, FixedSubalgebra};
use descent_core::morphisms::{res_bd, res_bd_image_is_fixed_subalgebra};
use descent_core::DescentAlgebra;

const SEED: u64 = 0x5eed_d35c;

type Criterion = (&'static str, fn(&Loader) -> Outcome);

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, label: &str, checks: &[Check]) -> usize {
        for c in checks.iter().filter(|c| c.failed()) {
            let ce = c.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
            self.failures.push(format!("{label}/{}: {ce}", c.name));
        }
        checks.iter().map(|c| c.cases).sum()
    }
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

const RANK_AT_MOST_3: [&str; 16] = [
    "A1", "A2", "B2", "G2", "I2(5)", "I2(7)", "I2(8)", "A3", "B3", "H3", "A1xA1", "A1xA2", "A1xB2", "A1xG2",
    "A1xI2(5)", "A1xA1xA1",
];

const RANK_AT_MOST_4: [&str; 21] = [
    "A1", "A2", "B2", "G2", "I2(5)", "I2(7)", "I2(8)", "A3", "B3", "H3", "A4", "B4", "D4", "F4", "H4", "A1xA1",
    "A1xA2", "A1xB2", "A2xA2", "A1xA3", "A1xA1xA1",
];

const IRREDUCIBLE_RANK_AT_MOST_6: [&str; 24] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "D4", "D5", "D6", "E6", "F4", "G2", "H3",
    "H4", "I2(5)", "I2(7)", "I2(8)", "I2(9)", "I2(10)",
];

fn table_rows(l: &Loader) -> Outcome {
    type Row = (&'static str, usize, usize, usize, &'static [usize]);
    let mut expected: Vec<Row> = vec![
        ("D4", 1, 11, 2, &[16, 5]),
        ("D4", 2, 9, 2, &[12, 3]),
        ("D4", 3, 7, 2, &[8, 1]),
        ("F4", 1, 12, 2, &[16, 4]),
        ("F4", 2, 8, 2, &[10, 2]),
        ("H3", 1, 6, 2, &[8, 2]),
        ("H4", 1, 10, 2, &[16, 6]),
        ("E6", 1, 17, 5, &[64, 47, 28, 12, 3]),
        ("E6", 2, 17, 3, &[40, 23, 5]),
    ];
    for even in ["I2(2)", "I2(4)", "I2(6)", "I2(8)"] {
        expected.push((even, 1, 4, 1, &[4]));
        expected.push((even, 2, 3, 1, &[3]));
    }
    for odd in ["I2(3)", "I2(5)", "I2(7)", "I2(9)"] {
        expected.push((odd, 1, 3, 2, &[4, 1]));
        expected.push((odd, 2, 3, 1, &[3]));
    }
    let mut o = Outcome::new();
    for &(label, order, orbits, ll, dims) in &expected {
        let row = l.algebra(label).and_then(|a| table::row(&a, order));
        match row {
            Ok(r) => o.expect(
                r.lambda_orbits == orbits && r.loewy_length == ll && r.radical_dims == dims && r.is_consistent(),
                || format!("{label} o={order}: got {r:?}"),
            ),
            Err(e) => o.failures.push(format!("{label} o={order}: {e}")),
        }
    }
    o.summary = format!("{} rows (D4, F4, H3, H4, E6, I2(m) for m = 2..9)", expected.len());
    o
}

fn loewy_lengths(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let ll = |label: &str| l.algebra(label).map(|a| a.loewy_profile().loewy_length).unwrap();
    for n in 2..=6 {
        let got = ll(&format!("B{n}"));
        o.expect(got == ceil_half(n), || format!("LL(B{n}) = {got}"));
    }
    for n in [4, 6] {
        let got = ll(&format!("D{n}"));
        o.expect(got == n / 2, || format!("LL(D{n}) = {got}"));
    }
    let d5 = ll("D5");
    o.expect(d5 >= 4, || format!("LL(D5) = {d5} < 4"));
    for label in IRREDUCIBLE_RANK_AT_MOST_6 {
        let a = l.algebra(label).unwrap();
        let f = FixedSubalgebra::new(&a, sigma0(a.system())).unwrap();
        let got = f.loewy_profile().loewy_length;
        o.expect(got == ceil_half(a.rank()), || format!("LL({label}, σ0) = {got}"));
    }
    let eq = if d5 == 4 { "equality" } else { "strict" };
    o.summary = format!(
        "LL(B2..B6), LL(D4), LL(D6), LL(W,σ0) on {} irreducible types; LL(D5) = {d5} vs bound 4 ({eq})",
        IRREDUCIBLE_RANK_AT_MOST_6.len()
    );
    o
}

fn oracle(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let mut pairs = 0;
    let labels: Vec<&str> = RANK_AT_MOST_3.iter().copied().chain(["B4"]).collect();
    for label in &labels {
        let a = l.algebra(label).unwrap();
        pairs += o.absorb(label, &verify::solomon_oracle(&a));
    }
    o.summary = format!("{pairs} ordered basis pairs over {} systems", labels.len());
    o
}

fn positivity(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let opts = Options { seed: SEED, samples: 100 };
    let mut cases = 0;
    for label in RANK_AT_MOST_4 {
        let a = l.algebra(label).unwrap();
        cases += o.absorb(label, &verify::positivity(&a, opts));
    }
    o.summary = format!("100 elements x {} systems, seed {SEED:#x}, {cases} checks", RANK_AT_MOST_4.len());
    o
}

fn counterexamples(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let mut checks = verify::counterexamples(&l.algebra("A2").unwrap());
    checks.extend(verify::counterexamples(&l.algebra("A3").unwrap()));
    o.absorb("", &checks);
    o.expect(checks.len() == 5, || format!("expected 5 examples, found {}", checks.len()));
    let n = checks
        .iter()
        .find(|c| c.name == "radical_element_minimal_polynomial_is_power_of_t")
        .and_then(|c| c.detail.as_ref())
        .map(|d| format!("{}, n = {}", d["minimal_polynomial"].as_str().unwrap_or("?"), d["n"]))
        .unwrap_or_default();
    o.summary = format!("{} examples in A2/A3; nilpotent minimal polynomial {n}", checks.len());
    o
}

fn morphisms(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let mut cases = 0;
    for label in RANK_AT_MOST_4 {
        let a = l.algebra(label).unwrap();
        match verify::morphisms(&a) {
            Ok(checks) => cases += o.absorb(label, &checks),
            Err(e) => o.failures.push(format!("{label}: {e}")),
        }
    }
    for label in ["E6", "G2", "H3", "F4", "H4"] {
        let check = verify::surjectivity_classification(&l.algebra(label).unwrap()).unwrap();
        o.expect(check.status == verify::Status::Pass, || format!("{label}: {:?}", check.counterexample));
    }
    for n in 2..=6 {
        let b = l.algebra(&format!("B{n}")).unwrap();
        let ok = res_bd(&b).and_then(|r| res_bd_image_is_fixed_subalgebra(&r));
        o.expect(matches!(ok, Ok(true)), || format!("Res_{n} image: {ok:?}"));
    }
    o.summary = format!(
        "restriction identities on {} systems ({cases} cases), surjectivity lists F4/H4/E6/G2/H3, Res_n for n = 2..6, quotient sets for B3/B4",
        RANK_AT_MOST_4.len()
    );
    o
}

fn bhs(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let mut cases = 0;
    for label in RANK_AT_MOST_4 {
        let a = l.algebra(label).unwrap();
        cases += o.absorb(label, &[verify::bhs_symmetry(&a)]);
    }
    o.summary = format!("{cases} unordered pairs over {} systems", RANK_AT_MOST_4.len());
    o
}

fn bounds(l: &Loader) -> Outcome {
    let mut o = Outcome::new();
    let reducible = ["A1xA1", "A1xA2", "A1xB2", "A2xA2", "A1xA3", "A1xA1xA1", "B2xB2", "A2xB3", "A1xD4", "A3xA3"];
    let labels: Vec<&str> = IRREDUCIBLE_RANK_AT_MOST_6.iter().copied().chain(reducible).collect();
    for label in &labels {
        let a: Arc<DescentAlgebra> = l.algebra(label).unwrap();
        match verify::loewy_bounds(&a) {
            Ok(checks) => {
                o.absorb(label, &checks);
            }
            Err(e) => o.failures.push(format!("{label}: {e}")),
        }
    }
    let mut reports = Vec::new();
    for label in ["B3", "B5"] {
        let rep = l.algebra(label).unwrap().b_tau_report().unwrap();
        reports.push(format!(
            "{label}: dim (Ker θ)^{} = {}, equals Qτ_{}: {}",
            rep.r, rep.radical_power_dim, rep.r, rep.equals_tau_line
        ));
    }
    o.summary = format!("bounds and |Λ/σ| = d0 - d1 on {} systems; reported {}", labels.len(), reports.join("; "));
    o
}

fn main() -> ExitCode {
    let loader = Loader::new(Cache::from_env(), false);
    let criteria: [Criterion; 8] = [
        ("table rows", table_rows),
        ("Loewy lengths", loewy_lengths),
        ("oracle equivalence", oracle),
        ("positivity", positivity),
        ("counterexamples", counterexamples),
        ("morphisms", morphisms),
        ("character symmetry", bhs),
        ("general bounds", bounds),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&loader)));
        let (ok, text) = match outcome {
            Ok(o) if o.failures.is_empty() => (true, o.summary),
            Ok(o) => (false, format!("{} failure(s), first: {}", o.failures.len(), o.failures[0])),
            Err(_) => (false, "panicked".to_string()),
        };
        all &= ok;
        println!("criterion {} [{}] {name}: {text}", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
