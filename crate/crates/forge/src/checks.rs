//! Named consistency checks run by `seidel-forge verify`.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seidel_forge_core::canon::canonical_key;
use seidel_forge_core::enumeration::{
    construct_dst_witness, construct_kn_class, dst_feasible, isomorphic, s_table, seidel_corank_three,
    verify_cao, verify_fiber_n6, E8Frame, FiberReport, OmegaTable, OracleCounts, STable, CLASS_COUNT,
};
use seidel_forge_core::graph::Graph;
use seidel_forge_core::lattice::{n_r, LatticeSpec};
use seidel_forge_core::linalg::max_eig_le;

use crate::{fixtures, parallel};

/// Check names with a one-line subject, in run order.
pub const CHECKS: [(&str, &str); 11] = [
    ("structure", "root counts, Weyl group orders, N_r and pair-classes"),
    ("cone-rank", "λ_max(S) ≤ 3 iff A(cone)+2I ⪰ 0, with rank(3I−S)+1 = rank(A+2I)"),
    ("complement-norms", "E_8 complements of the two K_6 witnesses have minimal norms 2 and 8"),
    ("complete-family", "A_{n+1} witnesses give the class of K_n"),
    ("matching-family", "D_m witnesses give D_{m−2,n−m+2} with rank(3I−S) = m−1"),
    ("fiber-six", "10 orbits of 6-subsets give 9 classes, K_6 twice"),
    ("complement-symmetry", "c(n) = c(28−n) and ω(6)+1 = ω(22)"),
    ("excess", "s(n) = s_e(n)+2 and s(n)−ω(n) for 8 ≤ n ≤ 28"),
    ("oracle", "exhaustive graph enumeration agrees with the lattice pipeline"),
    ("omega-fixture", "ω(0..29) equals the reference table"),
    ("s-fixture", "s(0..13) and s_e(0..13) equal the reference table"),
];

pub fn is_check(name: &str) -> bool {
    CHECKS.iter().any(|(n, _)| *n == name)
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest order for the exhaustive oracle.
    pub oracle_n_max: usize,
    pub cao_samples: usize,
    pub cao_n_max: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle_n_max: 7, cao_samples: 500, cao_n_max: 8, seed: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub subject: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Lazily computed pipeline results shared between checks.
pub struct Context {
    frame: E8Frame,
    omega: OnceLock<OmegaTable>,
    s: OnceLock<STable>,
    fiber: OnceLock<FiberReport>,
}

impl Context {
    pub fn new() -> anyhow::Result<Self> {
        Ok(Context { frame: E8Frame::new()?, omega: OnceLock::new(), s: OnceLock::new(), fiber: OnceLock::new() })
    }

    pub fn frame(&self) -> &E8Frame {
        &self.frame
    }

    pub fn omega(&self) -> anyhow::Result<&OmegaTable> {
        if self.omega.get().is_none() {
            let _ = self.omega.set(parallel::omega_table(&self.frame)?);
        }
        Ok(self.omega.get().expect("set above"))
    }

    pub fn s_table(&self) -> anyhow::Result<&STable> {
        if self.s.get().is_none() {
            let small = parallel::small_exact_counts(&self.frame)?;
            let _ = self.s.set(s_table(28, self.omega()?, &small)?);
        }
        Ok(self.s.get().expect("set above"))
    }

    pub fn fiber(&self) -> anyhow::Result<&FiberReport> {
        if self.fiber.get().is_none() {
            let _ = self.fiber.set(verify_fiber_n6(&self.frame)?);
        }
        Ok(self.fiber.get().expect("set above"))
    }
}

fn outcome(name: &'static str, failures: Vec<String>, ok_detail: String) -> CheckOutcome {
    let subject = CHECKS.iter().find(|(n, _)| *n == name).map_or("", |(_, s)| *s);
    let passed = failures.is_empty();
    let detail = if passed { ok_detail } else { failures.join("; ") };
    CheckOutcome { name, subject, passed, detail }
}

pub fn run_check(name: &str, ctx: &Context, opts: &VerifyOptions) -> anyhow::Result<CheckOutcome> {
    let name: &'static str = CHECKS
        .iter()
        .map(|(n, _)| *n)
        .find(|n| *n == name)
        .ok_or_else(|| anyhow::anyhow!("unknown check `{name}`"))?;
    match name {
        "structure" => structure(ctx),
        "cone-rank" => cone_rank(opts),
        "complement-norms" => complement_norms(ctx),
        "complete-family" => complete_family(),
        "matching-family" => matching_family(),
        "fiber-six" => fiber_six(ctx),
        "complement-symmetry" => complement_symmetry(ctx),
        "excess" => excess(ctx),
        "oracle" => oracle(ctx, opts),
        "omega-fixture" => omega_fixture(ctx),
        _ => s_fixture(ctx),
    }
}

fn structure(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let mut failures = Vec::new();
    let expected_roots = [
        (LatticeSpec::a(2)?, 6),
        (LatticeSpec::a(7)?, 56),
        (LatticeSpec::d(4)?, 24),
        (LatticeSpec::d(8)?, 112),
        (LatticeSpec::e(6)?, 72),
        (LatticeSpec::e(7)?, 126),
        (LatticeSpec::e8(), 240),
    ];
    for (spec, count) in expected_roots {
        let found = spec.roots().len();
        if found != count {
            failures.push(format!("{spec} has {found} roots, expected {count}"));
        }
    }
    let f = ctx.frame();
    let orders = [
        ("|W(E8)|", f.weyl.order(), 696_729_600u64),
        ("|W(E8)_r|", f.stabilizer.order(), 2_903_040),
        ("image on classes", f.class_group.order(), 1_451_520),
    ];
    for (what, found, expected) in &orders {
        if *found != (*expected).into() {
            failures.push(format!("{what} = {found}, expected {expected}"));
        }
    }
    let nr = n_r(&LatticeSpec::e8(), &f.switching_root)?.len();
    if nr != 56 {
        failures.push(format!("|N_r| = {nr}, expected 56"));
    }
    if f.classes.len() != CLASS_COUNT {
        failures.push(format!("{} pair-classes, expected {CLASS_COUNT}", f.classes.len()));
    }
    if !f.weyl.is_transitive() || !f.class_group.is_transitive() {
        failures.push("an action is not transitive".to_string());
    }
    let detail = format!(
        "|W(E8)| = {}, |W(E8)_r| = {}, image order {}, |N_r| = {nr}, {} classes",
        orders[0].1,
        orders[1].1,
        orders[2].1,
        f.classes.len()
    );
    Ok(outcome("structure", failures, detail))
}

fn cone_rank(opts: &VerifyOptions) -> anyhow::Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let report = verify_cao(opts.cao_n_max, opts.cao_samples, &mut rng)?;
    let failures = report.failures.iter().map(|(n, edges)| format!("counterexample on {n} vertices: {edges:?}")).collect();
    let detail = format!(
        "{} graphs on ≤ {} vertices, {} bounded, {} rank identities",
        report.samples, opts.cao_n_max, report.bounded, report.rank_checks
    );
    Ok(outcome("cone-rank", failures, detail))
}

fn complement_norms(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let fiber = ctx.fiber()?;
    let mut norms: Vec<Option<i64>> = fiber.witnesses.iter().map(|w| w.complement_min_norm).collect();
    norms.sort();
    let mut failures = Vec::new();
    if norms != [Some(2), Some(8)] {
        failures.push(format!("minimal norms {norms:?}"));
    }
    for w in &fiber.witnesses {
        if w.lattice != "A7" {
            failures.push(format!("witness {:?} spans {}", w.subset, w.lattice));
        }
    }
    Ok(outcome("complement-norms", failures, "both witnesses span A7; complements have minimal norms 2 and 8".into()))
}

fn complete_family() -> anyhow::Result<CheckOutcome> {
    let mut failures = Vec::new();
    for n in 0..=10 {
        if construct_kn_class(n)? != canonical_key(&Graph::complete(n)?) {
            failures.push(format!("n = {n}"));
        }
    }
    Ok(outcome("complete-family", failures, "n = 0..=10".into()))
}

/// Every feasible `(n, m)` with `m ≤ m_max`: the witness graph is
/// `D_{m−2,n−m+2}`, `λ_max ≤ 3`, `rank(3I − S) = m − 1`, and 3 is an
/// eigenvalue exactly when `m ≤ n`.
pub fn matching_family_failures(m_max: usize) -> anyhow::Result<(usize, Vec<String>)> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for m in 4..=m_max {
        for n in 0..=2 * (m - 2) {
            if !dst_feasible(n, m) {
                continue;
            }
            cases += 1;
            let w = construct_dst_witness(n, m)?;
            let expected = Graph::complete_minus_matching(m - 2, n + 2 - m)?;
            if !isomorphic(&w.graph, &expected) {
                failures.push(format!("(n, m) = ({n}, {m}): graph is not D_{{{},{}}}", m - 2, n + 2 - m));
            }
            if !max_eig_le(&w.graph.seidel_matrix(), 3) {
                failures.push(format!("(n, m) = ({n}, {m}): λ_max > 3"));
            }
            let rank = seidel_corank_three(&w.graph);
            if rank != m - 1 {
                failures.push(format!("(n, m) = ({n}, {m}): rank(3I−S) = {rank}, expected {}", m - 1));
            }
            if (rank < n) != (m <= n) {
                failures.push(format!("(n, m) = ({n}, {m}): eigenvalue 3 present = {}", rank < n));
            }
        }
    }
    Ok((cases, failures))
}

fn matching_family() -> anyhow::Result<CheckOutcome> {
    let (cases, failures) = matching_family_failures(12)?;
    Ok(outcome("matching-family", failures, format!("{cases} feasible (n, m) with m ≤ 12")))
}

fn fiber_six(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let fiber = ctx.fiber()?;
    let detail = format!(
        "{} orbits, {} distinct classes, repeated class {}",
        fiber.orbit_count,
        fiber.distinct_keys,
        fiber.repeated_keys.first().map_or(String::from("none"), |k| k.to_hex())
    );
    Ok(outcome("fiber-six", fiber.failures.clone(), detail))
}

fn complement_symmetry(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let t = ctx.omega()?;
    let mut failures = Vec::new();
    for n in 0..=CLASS_COUNT {
        let m = CLASS_COUNT - n;
        if t.raw_orbit_counts[n] != t.raw_orbit_counts[m] {
            failures.push(format!("c({n}) ≠ c({m})"));
        }
        if n != 6 && n != 22 && t.omega[n] != t.omega[m] {
            failures.push(format!("ω({n}) ≠ ω({m})"));
        }
    }
    if t.omega[6] + 1 != t.omega[22] {
        failures.push(format!("ω(6)+1 = {} but ω(22) = {}", t.omega[6] + 1, t.omega[22]));
    }
    Ok(outcome("complement-symmetry", failures, format!("ω(6) = {}, ω(22) = {}", t.omega[6], t.omega[22])))
}

/// `s(n) − s_e(n) = 2` and `s(n) − ω(n)` equals `n − 6` or `⌊n/2⌋ + 1`.
pub fn excess_failures(s: &STable, omega: &OmegaTable) -> Vec<String> {
    let mut failures = Vec::new();
    for n in 8..s.s.len() {
        if s.s[n] != s.s_e[n] + 2 {
            failures.push(format!("s({n}) = {} but s_e({n}) = {}", s.s[n], s.s_e[n]));
        }
        let expected = if n <= 12 { n as u64 - 6 } else { n as u64 / 2 + 1 };
        let found = s.s[n] as i64 - omega.omega(n) as i64;
        if found != expected as i64 {
            failures.push(format!("s({n}) − ω({n}) = {found}, expected {expected}"));
        }
    }
    failures
}

fn excess(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let failures = excess_failures(ctx.s_table()?, ctx.omega()?);
    Ok(outcome("excess", failures, "n = 8..=28".into()))
}

/// Brute-force counts for `0..=n_max` against the lattice pipeline.
pub fn oracle_failures(
    oracle: &[OracleCounts],
    s: &STable,
    omega: &OmegaTable,
) -> Vec<String> {
    oracle
        .iter()
        .enumerate()
        .filter_map(|(n, o)| {
            let expected = OracleCounts { s: s.s[n], s_e: s.s_e[n], omega: omega.omega(n) };
            (*o != expected).then(|| format!("n = {n}: oracle {o:?}, pipeline {expected:?}"))
        })
        .collect()
}

fn oracle(ctx: &Context, opts: &VerifyOptions) -> anyhow::Result<CheckOutcome> {
    let counts = (0..=opts.oracle_n_max).map(parallel::brute_force_counts).collect::<Result<Vec<_>, _>>()?;
    let failures = oracle_failures(&counts, ctx.s_table()?, ctx.omega()?);
    let s: Vec<String> = counts.iter().map(|c| c.s.to_string()).collect();
    Ok(outcome("oracle", failures, format!("n = 0..={}: s = ({})", opts.oracle_n_max, s.join(","))))
}

fn omega_fixture(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let failures = fixtures::mismatches(&ctx.omega()?.omega, &fixtures::OMEGA)
        .into_iter()
        .map(|(n, c, p)| format!("ω({n}) = {c}, reference {p}"))
        .collect();
    Ok(outcome("omega-fixture", failures, "n = 0..=29".into()))
}

fn s_fixture(ctx: &Context) -> anyhow::Result<CheckOutcome> {
    let t = ctx.s_table()?;
    let mut failures: Vec<String> = fixtures::mismatches(&t.s, &fixtures::S)
        .into_iter()
        .map(|(n, c, p)| format!("s({n}) = {c}, reference {p}"))
        .collect();
    failures.extend(
        fixtures::mismatches(&t.s_e, &fixtures::S_E).into_iter().map(|(n, c, p)| format!("s_e({n}) = {c}, reference {p}")),
    );
    Ok(outcome("s-fixture", failures, "n = 0..=13".into()))
}
