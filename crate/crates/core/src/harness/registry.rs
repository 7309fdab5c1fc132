//! Named randomized checks, selected at runtime by id.

use std::collections::BTreeMap;

use super::generate::{InstanceGenerator, Zonotope};
use super::inequalities::{
    check_corollary, check_log_concavity_form, check_main_theorem, check_reverse_kt, check_simplex_inequality,
    check_zonoid_constant, composition_selector_pairs,
};
use super::HarnessError;
use crate::discriminant::{
    check_discriminant_bezout, check_discriminant_diagonal, check_pointwise_wedge_inequality, gamma_from_matrices,
    sharper_constant_report, Gamma, SymMatrix,
};
use crate::geometry::{minkowski_sum, Point, VPolytope};
use crate::inradius::{check_diskant_bound, check_inclusion_scaling};
use crate::newton::{bkk_bound, classical_bound, compare_bounds, LaurentPolynomial};
use crate::rational::{int, k_subsets, Rational};
use crate::report::InequalityReport;

pub trait InequalityCheck: Send + Sync {
    fn id(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Non-asserting checks only record observations; a false `holds` is
    /// not a violation.
    fn asserts(&self) -> bool {
        true
    }
    fn supports_dim(&self, dim: usize) -> bool;
    /// One random instance; `trial` cycles structural parameters such as
    /// compositions and selectors.
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError>;
    /// Known equality cases appended to every suite in this dimension.
    fn sharp_instances(&self, _dim: usize) -> Result<Vec<InequalityReport>, HarnessError> {
        Ok(Vec::new())
    }
}

pub struct Registry {
    checks: BTreeMap<&'static str, Box<dyn InequalityCheck>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self { checks: BTreeMap::new() };
        r.register(Box::new(MainTheorem));
        r.register(Box::new(Corollary));
        r.register(Box::new(ReverseKt));
        r.register(Box::new(SimplexInequality));
        r.register(Box::new(ZonoidConstant));
        r.register(Box::new(LogConcavity));
        r.register(Box::new(Diskant));
        r.register(Box::new(InclusionScaling));
        r.register(Box::new(DiscriminantBezout));
        r.register(Box::new(DiscriminantDiagonal));
        r.register(Box::new(DiscriminantSharperSearch));
        r.register(Box::new(PointwiseWedge));
        r.register(Box::new(BkkBezout));
        r.register(Box::new(BkkRemark));
        r
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self { checks: BTreeMap::new() }
    }

    pub fn register(&mut self, check: Box<dyn InequalityCheck>) {
        self.checks.insert(check.id(), check);
    }

    pub fn get(&self, id: &str) -> Result<&dyn InequalityCheck, HarnessError> {
        self.checks.get(id).map(|c| c.as_ref()).ok_or_else(|| HarnessError::UnknownInequality(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.keys().copied().collect()
    }
}

fn cycle<T: Clone>(items: &[T], trial: u64) -> T {
    items[(trial % items.len() as u64) as usize].clone()
}

/// `1..=n`, cycled by trial.
fn level(n: usize, trial: u64) -> usize {
    1 + (trial % n as u64) as usize
}

fn tag(report: InequalityReport, extra: &str) -> InequalityReport {
    let digest = format!("{};{extra}", report.digest);
    InequalityReport { digest, ..report }
}

fn kinds(names: &[&str]) -> String {
    format!("kinds={}", names.join(","))
}

/// Unit segments along `u` and `v` and their sum: the planar equality case.
fn segment_family() -> Vec<(VPolytope, VPolytope, VPolytope)> {
    let dirs: [([i64; 2], [i64; 2]); 3] = [([1, 0], [0, 1]), ([1, 2], [3, -1]), ([2, 1], [-1, 3])];
    dirs.iter()
        .map(|(u, v)| {
            let k = VPolytope::segment(Point::origin(2), Point::from_ints(u)).expect("planar");
            let l = VPolytope::segment(Point::origin(2), Point::from_ints(v)).expect("planar");
            let d = minkowski_sum(&k, &l).expect("planar");
            (k, l, d)
        })
        .collect()
}

pub struct MainTheorem;

impl InequalityCheck for MainTheorem {
    fn id(&self) -> &'static str {
        "main-theorem"
    }
    fn summary(&self) -> &'static str {
        "C(n,a_k) V(K_1^a_1..K_r^a_r, D^(n-|a|)) vol(D)^(r-1) <= prod C(n,a_i) V(K_i^a_i, D^(n-a_i))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let (a, k) = cycle(&composition_selector_pairs(g.dim()), trial);
        let mut names = Vec::new();
        let mut bodies = Vec::new();
        for &ai in &a {
            let (kind, b) = g.body();
            names.push(kind.name());
            bodies.push((b, ai));
        }
        let (kind, d) = g.full_body();
        names.push(kind.name());
        Ok(tag(check_main_theorem(&bodies, &d, k)?, &kinds(&names)))
    }
    fn sharp_instances(&self, dim: usize) -> Result<Vec<InequalityReport>, HarnessError> {
        if dim != 2 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (i, (k, l, d)) in segment_family().into_iter().enumerate() {
            for sel in 1..=2 {
                let r = check_main_theorem(&[(k.clone(), 1), (l.clone(), 1)], &d, sel)?;
                out.push(tag(r, &format!("segment-family={i}")));
            }
        }
        Ok(out)
    }
}

pub struct Corollary;

impl InequalityCheck for Corollary {
    fn id(&self) -> &'static str {
        "corollary"
    }
    fn summary(&self) -> &'static str {
        "V(K_1..K_r, D^(n-r)) vol(D)^(r-1) <= n^(r-1) prod V(K_i, D^(n-1))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let r = level(g.dim(), trial);
        let mut names = Vec::new();
        let bodies: Vec<VPolytope> = (0..r)
            .map(|_| {
                let (kind, b) = g.body();
                names.push(kind.name());
                b
            })
            .collect();
        let (kind, d) = g.full_body();
        names.push(kind.name());
        Ok(tag(check_corollary(&bodies, &d)?, &kinds(&names)))
    }
    fn sharp_instances(&self, dim: usize) -> Result<Vec<InequalityReport>, HarnessError> {
        if dim != 2 {
            return Ok(Vec::new());
        }
        segment_family()
            .into_iter()
            .enumerate()
            .map(|(i, (k, l, d))| Ok(tag(check_corollary(&[k, l], &d)?, &format!("segment-family={i}"))))
            .collect()
    }
}

pub struct ReverseKt;

impl InequalityCheck for ReverseKt {
    fn id(&self) -> &'static str {
        "reverse-kt"
    }
    fn summary(&self) -> &'static str {
        "vol(L) V(K^k, M_1..M_(n-k)) <= C(n,k) V(K^k, L^(n-k)) V(L^k, M_1..M_(n-k))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let n = g.dim();
        let k = level(n, trial);
        let (_, body_k) = g.body();
        let (_, l) = g.full_body();
        // A quarter of the instances use the power form M_1 = ... = M_{n-k}.
        let power_form = g.percent(25);
        let ms: Vec<VPolytope> = if power_form {
            let (_, m) = g.body();
            vec![m; n - k]
        } else {
            (0..n - k).map(|_| g.body().1).collect()
        };
        let form = if power_form { "power" } else { "list" };
        Ok(tag(check_reverse_kt(&body_k, &l, &ms, k)?, &format!("m={form}")))
    }
}

pub struct SimplexInequality;

impl InequalityCheck for SimplexInequality {
    fn id(&self) -> &'static str {
        "simplex"
    }
    fn summary(&self) -> &'static str {
        "V(K_1..K_r, Delta^(n-r)) vol(Delta)^(r-1) <= prod V(K_i, Delta^(n-1))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let r = level(g.dim(), trial);
        let segments = trial % 4 == 3;
        let bodies: Vec<VPolytope> = (0..r).map(|_| if segments { g.segment() } else { g.body().1 }).collect();
        let extra = if segments { "segments" } else { "bodies" };
        Ok(tag(check_simplex_inequality(&bodies)?, extra))
    }
}

pub struct ZonoidConstant;

impl InequalityCheck for ZonoidConstant {
    fn id(&self) -> &'static str {
        "zonoid"
    }
    fn summary(&self) -> &'static str {
        "zonotopes K_i: V(K_1..K_r, D^(n-r)) vol(D)^(r-1) <= r^r/r! prod V(K_i, D^(n-1))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let r = level(g.dim(), trial);
        let zs: Vec<Zonotope> = (0..r).map(|_| g.zonotope_body()).collect();
        let (kind, d) = g.full_body();
        let gens: Vec<String> = zs.iter().map(|z| z.generators.len().to_string()).collect();
        Ok(tag(check_zonoid_constant(&zs, &d)?, &format!("generators={};d={}", gens.join(","), kind.name())))
    }
    fn sharp_instances(&self, dim: usize) -> Result<Vec<InequalityReport>, HarnessError> {
        if dim != 2 {
            return Ok(Vec::new());
        }
        let z = |v: [i64; 2]| Zonotope { offset: Point::origin(2), generators: vec![Point::from_ints(&v)] };
        let (k, l) = (z([1, 0]), z([0, 1]));
        let d = minkowski_sum(&k.to_polytope(), &l.to_polytope())?;
        Ok(vec![tag(check_zonoid_constant(&[k, l], &d)?, "segment-family=0")])
    }
}

pub struct LogConcavity;

impl InequalityCheck for LogConcavity {
    fn id(&self) -> &'static str {
        "log-concavity"
    }
    fn summary(&self) -> &'static str {
        "V(K^r, D^(n-r)) vol(D)^(r-1) <= V(K, D^(n-1))^r"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=5).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let r = level(g.dim(), trial);
        let (k_kind, k) = g.body();
        let (d_kind, d) = g.full_body();
        Ok(tag(check_log_concavity_form(&k, &d, r)?, &kinds(&[k_kind.name(), d_kind.name()])))
    }
}

/// The pair of full-dimensional bodies used by the inradius checks.
pub fn inradius_pair(g: &mut InstanceGenerator) -> (VPolytope, VPolytope) {
    let (_, k) = g.full_body();
    let (_, l) = g.full_body();
    (k, l)
}

pub struct Diskant;

impl InequalityCheck for Diskant {
    fn id(&self) -> &'static str {
        "diskant"
    }
    fn summary(&self) -> &'static str {
        "vol(K) / (n V(K^(n-1), L)) <= r(K, L)"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=4).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, _trial: u64) -> Result<InequalityReport, HarnessError> {
        let (k, l) = inradius_pair(g);
        Ok(check_diskant_bound(&k, &l)?)
    }
}

pub struct InclusionScaling;

impl InequalityCheck for InclusionScaling {
    fn id(&self) -> &'static str {
        "inclusion-scaling"
    }
    fn summary(&self) -> &'static str {
        "L fits in (n V(L, K^(n-1)) / vol(K)) K after translation"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=4).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, _trial: u64) -> Result<InequalityReport, HarnessError> {
        let (k, l) = inradius_pair(g);
        Ok(check_inclusion_scaling(&k, &l)?)
    }
}

fn psd_or_diagonal(g: &mut InstanceGenerator) -> SymMatrix {
    if g.percent(20) {
        g.diagonal_psd()
    } else {
        g.psd_matrix(None)
    }
}

pub struct DiscriminantBezout;

impl InequalityCheck for DiscriminantBezout {
    fn id(&self) -> &'static str {
        "discriminant-bezout"
    }
    fn summary(&self) -> &'static str {
        "C(n,a_k) D(M_1^a_1..M_r^a_r, N^(n-|a|)) det(N)^(r-1) <= prod C(n,a_i) D(M_i^a_i, N^(n-a_i))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=6).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let (a, k) = cycle(&composition_selector_pairs(g.dim()), trial);
        let ms: Vec<(SymMatrix, usize)> = a.iter().map(|&ai| (psd_or_diagonal(g), ai)).collect();
        let n_mat = g.pd_matrix();
        Ok(check_discriminant_bezout(&ms, &n_mat, k)?)
    }
}

fn compositions_only(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (a, _) in composition_selector_pairs(n) {
        if out.last() != Some(&a) {
            out.push(a);
        }
    }
    out
}

pub struct DiscriminantDiagonal;

impl InequalityCheck for DiscriminantDiagonal {
    fn id(&self) -> &'static str {
        "discriminant-diagonal"
    }
    fn summary(&self) -> &'static str {
        "diagonal M_i, N: D(M.., N^(n-|a|)) det(N)^(r-1) <= (n!)^(r-1)(n-|a|)!/prod (n-a_i)! prod D(M_i^a_i, N^(n-a_i))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=6).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let a = cycle(&compositions_only(g.dim()), trial);
        let ms: Vec<(SymMatrix, usize)> = a.iter().map(|&ai| (g.diagonal_psd(), ai)).collect();
        let n_mat = g.diagonal_pd();
        Ok(check_discriminant_diagonal(&ms, &n_mat)?)
    }
}

/// The sharper diagonal constant evaluated on general PSD matrices. Whether
/// it holds there is open, so the outcome is only recorded.
pub struct DiscriminantSharperSearch;

impl InequalityCheck for DiscriminantSharperSearch {
    fn id(&self) -> &'static str {
        "discriminant-sharper-search"
    }
    fn summary(&self) -> &'static str {
        "exploratory: the diagonal constant on general PSD M_i and PD N"
    }
    fn asserts(&self) -> bool {
        false
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=6).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let a = cycle(&compositions_only(g.dim()), trial);
        let ms: Vec<(SymMatrix, usize)> = a.iter().map(|&ai| (g.psd_matrix(None), ai)).collect();
        let n_mat = g.pd_matrix();
        Ok(sharper_constant_report(&ms, &n_mat, self.id())?)
    }
}

pub struct PointwiseWedge;

impl InequalityCheck for PointwiseWedge {
    fn id(&self) -> &'static str {
        "pointwise-wedge"
    }
    fn summary(&self) -> &'static str {
        "sum_J mu_J Gamma_(J^c) <= (sum_J mu_J)(sum_K Gamma_K)"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=7).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let n = g.dim();
        let k = (trial % (n as u64 + 1)) as usize;
        let mu: Vec<Rational> = (0..n).map(|_| g.nonneg(20)).collect();
        // Even trials draw Gamma directly, odd ones from principal minors of PSD matrices.
        let (gamma, source) = if trial % 2 == 0 {
            let gamma: Gamma = k_subsets(n, n - k).into_iter().map(|key| (key, g.nonneg(20))).collect();
            (gamma, "synthetic")
        } else {
            let cs: Vec<SymMatrix> = (0..n - k).map(|_| g.psd_matrix(None)).collect();
            (gamma_from_matrices(n, &cs)?, "matrices")
        };
        let a = SymMatrix::diagonal(&mu);
        Ok(tag(check_pointwise_wedge_inequality(&a, &gamma, k)?, &format!("gamma={source}")))
    }
}

fn polynomial(n: usize, exps: &[Vec<i64>]) -> LaurentPolynomial {
    let terms = exps.iter().enumerate().map(|(i, e)| (int(i as i64 + 1), e.clone())).collect();
    LaurentPolynomial::new(n, terms).expect("distinct exponents, non-zero coefficients")
}

fn format_system(system: &[LaurentPolynomial]) -> String {
    system
        .iter()
        .map(|p| {
            p.exponents()
                .map(|e| e.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// `n` polynomials with random exponent sets.
pub fn random_system(g: &mut InstanceGenerator) -> Vec<LaurentPolynomial> {
    let n = g.dim();
    (0..n).map(|_| polynomial(n, &g.exponent_set())).collect()
}

pub struct BkkBezout;

impl InequalityCheck for BkkBezout {
    fn id(&self) -> &'static str {
        "bkk-bezout"
    }
    fn summary(&self) -> &'static str {
        "n! V(P_1..P_n) <= prod n! V(P_i, Delta^(n-1))"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=4).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, _trial: u64) -> Result<InequalityReport, HarnessError> {
        let system = random_system(g);
        let bkk = bkk_bound(&system)?;
        let classical = classical_bound(&system)?;
        let n = g.dim();
        let digest = format!("n={n};exponents={}", format_system(&system));
        Ok(InequalityReport::new("bkk-bezout", Rational::from_integer(bkk), Rational::from_integer(classical), digest))
    }
}

pub struct BkkRemark;

impl InequalityCheck for BkkRemark {
    fn id(&self) -> &'static str {
        "bkk-remark"
    }
    fn summary(&self) -> &'static str {
        "C(n,a_k) N(K_1^a_1.., D^(n-|a|)) N(D)^(r-1) <= prod C(n,a_i) N(K_i^a_i, D^(n-a_i)) for BKK counts N"
    }
    fn supports_dim(&self, dim: usize) -> bool {
        (1..=4).contains(&dim)
    }
    fn run_trial(&self, g: &mut InstanceGenerator, trial: u64) -> Result<InequalityReport, HarnessError> {
        let n = g.dim();
        let a = cycle(&compositions_only(n), trial);
        let total: usize = a.iter().sum();
        let mut sizes = a.clone();
        if total < n {
            sizes.push(n - total);
        }
        let mut system = Vec::new();
        for size in sizes {
            let base = g.exponent_set();
            for _ in 0..size {
                let shift: Vec<i64> = (0..n).map(|_| g.int(-1, 1)).collect();
                let moved: Vec<Vec<i64>> =
                    base.iter().map(|e| e.iter().zip(&shift).map(|(x, s)| x + s).collect()).collect();
                system.push(polynomial(n, &moved));
            }
        }
        let report = compare_bounds(&system, Some(&a))?;
        let remark = report.remark.ok_or_else(|| HarnessError::Precondition("no grouped bound".into()))?;
        Ok(tag(remark, &format!("exponents={}", format_system(&system))))
    }
}
