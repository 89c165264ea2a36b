//! The verification harness behind `sharpblunt verify`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use sharpblunt::corresp::{
    check_f, class_order_embedding, iota_surjective, iota_tilde, phi_count_report, rescaled_witnesses,
    strict_compatibility, theta, ALL_CASES,
};
use sharpblunt::fungroup::omega_prime;
use sharpblunt::rootdata::{affine_diagram, Family, FiniteType};
use sharpblunt::sharpfin::{crosscheck_backends, generic_degree, labels, poincare_sum_rule, r_op};
use sharpblunt::triples::{
    discrepancy, enumerate_blunt, enumerate_sharp, is_strictly_sharp, lemma27_equivalence, maximal_j_report,
    omega_class, sharp_group, strict_x, strictly_blunt_witness, Mode,
};

use crate::oracle::{blunt_list, sharp_list, strictly_sharp_entry, theta_values, Where};

pub const REPORT_SCHEMA: &str = "sharpblunt.verify/1";

/// Failures kept per check; the full count is always reported.
const KEEP_FAILURES: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    All,
    Tables,
    Lemma27,
    Counts,
    Backends,
    Correspondence,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Tables => "tables",
            Scope::Lemma27 => "lemma27",
            Scope::Counts => "counts",
            Scope::Backends => "backends",
            Scope::Correspondence => "correspondence",
        }
    }

    fn covers(self, s: Scope) -> bool {
        self == Scope::All || self == s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub scope: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

/// Literal-mode triples that the closed-form list does not have (or the
/// reverse) for one `(W', omega)`. Informational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyEntry {
    #[serde(rename = "type")]
    pub ty: String,
    pub omega_index: usize,
    pub omega: Vec<u64>,
    pub omega_class: String,
    pub literal_only: Vec<String>,
    pub normative_only: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub check: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub version: String,
    pub scope: String,
    pub max_rank: usize,
    /// All checks passed; discrepancies do not count.
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub discrepancies: Vec<DiscrepancyEntry>,
    /// Present only when asked for, since it breaks byte-identical reruns.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Vec<Timing>>,
}

struct Check {
    name: &'static str,
    scope: Scope,
    checked: u64,
    failures: Vec<String>,
    failure_count: u64,
}

impl Check {
    fn new(name: &'static str, scope: Scope) -> Self {
        Check { name, scope, checked: 0, failures: Vec::new(), failure_count: 0 }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEEP_FAILURES {
            self.failures.push(msg);
        }
    }

    fn guard<T>(&mut self, r: sharpblunt::Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.fail(format!("{}: {e}", ctx()));
                None
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.into(),
            scope: self.scope.name().into(),
            passed: self.failure_count == 0,
            checked: self.checked,
            failure_count: self.failure_count,
            failures: self.failures,
        }
    }
}

/// Every irreducible type up to `max_rank`, in canonical order.
pub fn all_types(max_rank: usize) -> Vec<FiniteType> {
    let mut out = Vec::new();
    for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        for n in 1..=max_rank {
            if let Ok(t) = FiniteType::new(f, n) {
                out.push(t);
            }
        }
    }
    out
}

fn where_of(w: FiniteType, x: &[u64]) -> Where {
    let g = omega_prime(w);
    Where::of(omega_class(&g, x), g.order())
}

fn sharp_list_check(max_rank: usize) -> Check {
    let mut c = Check::new("sharp_list", Scope::Tables);
    for wp in all_types(max_rank) {
        let g = sharp_group(wp);
        for x in g.elements() {
            let Some(got) = c.guard(enumerate_sharp(wp, &x, Mode::Normative), || format!("{wp} {x:?}")) else {
                continue;
            };
            let mut got: Vec<(Option<(u64, u64)>, String)> =
                got.iter().map(|s| (s.params, s.w_prime_i.weyl_form().to_string())).collect();
            got.sort();
            let want: Vec<(Option<(u64, u64)>, String)> =
                sharp_list(wp, where_of(wp.dual(), &x)).into_iter().map(|(p, e)| (p, e.to_string())).collect();
            c.expect(got == want, || format!("{wp} omega {x:?}: enumerated {got:?}, listed {want:?}"));
        }
    }
    c
}

fn strict_list_check(max_rank: usize) -> Check {
    let mut c = Check::new("strictly_sharp_list", Scope::Tables);
    for wp in all_types(max_rank) {
        let g = sharp_group(wp);
        for x in g.elements() {
            let Some(all) = c.guard(enumerate_sharp(wp, &x, Mode::Normative), || format!("{wp} {x:?}")) else {
                continue;
            };
            let strict: Vec<_> = all.iter().filter(|s| is_strictly_sharp(s)).collect();
            c.expect(strict.len() <= 1, || format!("{wp} omega {x:?}: {} strictly sharp triples", strict.len()));
            let got = strict.first().map(|s| {
                let x = if wp.family().is_classical() && wp.family() != Family::A { strict_x(s) } else { None };
                (x, s.w_prime_i.weyl_form().to_string())
            });
            let want = strictly_sharp_entry(wp, where_of(wp.dual(), &x)).map(|(x, e)| (x, e.to_string()));
            c.expect(got == want, || format!("{wp} omega {x:?}: enumerated {got:?}, listed {want:?}"));
            // the witness used for strict bluntness is the same triple
            if let Some(wit) = c.guard(strictly_blunt_witness(wp.dual(), &x), || format!("{wp} {x:?}")) {
                c.expect(wit.map(|s| s.i) == strict.first().map(|s| s.i.clone()), || {
                    format!("{} omega {x:?}: strictly blunt witness differs", wp.dual())
                });
            }
        }
    }
    c
}

fn blunt_list_check(max_rank: usize) -> Check {
    let mut c = Check::new("blunt_list", Scope::Tables);
    for w in all_types(max_rank) {
        for x in omega_prime(w).elements() {
            let Some(got) = c.guard(enumerate_blunt(w, &x), || format!("{w} {x:?}")) else { continue };
            let mut got: Vec<(String, Option<(u64, u64)>, String)> =
                got.iter().map(|b| (b.case.clone(), b.params, b.w_j.weyl_form().to_string())).collect();
            got.sort();
            let mut want: Vec<(String, Option<(u64, u64)>, String)> =
                blunt_list(w, where_of(w, &x)).into_iter().map(|(l, p, e)| (l, p, e.to_string())).collect();
            want.sort();
            c.expect(got == want, || format!("{w} omega {x:?}: enumerated {got:?}, listed {want:?}"));
        }
    }
    c
}

fn discrepancies(max_rank: usize) -> (Check, Vec<DiscrepancyEntry>) {
    let mut c = Check::new("literal_mode", Scope::Tables);
    let mut out = Vec::new();
    for wp in all_types(max_rank) {
        let g = sharp_group(wp);
        for (index, x) in g.elements().into_iter().enumerate() {
            let Some(d) = c.guard(discrepancy(wp, &x), || format!("{wp} {x:?}")) else { continue };
            c.checked += 1;
            if let Some(d) = d {
                let show = |v: &[sharpblunt::triples::SharpTriple]| -> Vec<String> {
                    v.iter().map(|s| format!("{:?} {}", s.removed, s.w_prime_i)).collect()
                };
                out.push(DiscrepancyEntry {
                    ty: wp.to_string(),
                    omega_index: index,
                    omega: x.clone(),
                    omega_class: d.omega_class.to_string(),
                    literal_only: show(&d.literal_only),
                    normative_only: show(&d.normative_only),
                });
            }
        }
    }
    (c, out)
}

fn mod8_check() -> Check {
    let mut c = Check::new("lemma_mod8", Scope::Lemma27);
    let r = lemma27_equivalence(200, 201);
    c.checked = r.checked;
    if !r.holds {
        c.fail(format!("counterexample (t, r) = {:?}", r.counterexample));
    }
    c
}

fn e8_trivial() -> (FiniteType, Vec<u64>) {
    let e8: FiniteType = "E8".parse().expect("E8");
    (e8, omega_prime(e8).identity())
}

fn fiber_count_check() -> Check {
    let mut c = Check::new("fiber_counts", Scope::Counts);
    let (e8, one) = e8_trivial();
    let Some(report) = c.guard(maximal_j_report(e8, &one), || "E8".into()) else { return c };
    for (name, want) in [("A4xA4", 4), ("A5xA2xA1", 2), ("A8", 0), ("A7xA1", 0)] {
        match report.iter().find(|m| m.w_j.to_string() == name) {
            Some(m) => c.expect(m.m_star.len() == want, || format!("|M*| for {name} is {}, not {want}", m.m_star.len())),
            None => c.expect(false, || format!("no maximal J of type {name}")),
        }
    }
    if let Some(m) = report.iter().find(|m| m.w_j.to_string() == "A5xA2xA1") {
        if let Some(r) = c.guard(rescaled_witnesses(e8, &one, m.deleted, &[1, 2, 3]), || "A5xA2xA1".into()) {
            let got = r.map(|r| r.witnesses);
            c.expect(got == Some(vec![vec![1, 1, 1], vec![5, 2, 1]]), || format!("A5xA2xA1 witnesses {got:?}"));
        }
    }
    c
}

fn phi_check() -> Check {
    let mut c = Check::new("phi_identity", Scope::Counts);
    for w in all_types(8).into_iter().filter(|w| affine_diagram(*w).boc() >= 3) {
        for x in omega_prime(w).elements() {
            if let Some(r) = c.guard(phi_count_report(w, &x), || format!("{w} {x:?}")) {
                for e in r.entries.iter().filter(|e| e.blunt) {
                    c.expect(e.holds, || {
                        format!("{w} omega {x:?} {}: |M*| = {}, phi({}) = {}", e.w_j, e.m_star_count, e.mark, e.phi_mark)
                    });
                }
            }
        }
    }
    c
}

fn backend_check() -> Check {
    let mut c = Check::new("backend_crosscheck", Scope::Backends);
    if let Some(r) = c.guard(crosscheck_backends(12), || "crosscheck".into()) {
        c.checked = r.pairs_checked as u64;
        for m in r.mismatches {
            c.fail(format!("{} {:?}: classification {}, generic {}", m.ty, m.gamma, m.classification, m.generic));
        }
    }
    c
}

fn z_check() -> Check {
    let mut c = Check::new("z_bound", Scope::Backends);
    for t in all_types(8).into_iter().filter(|t| t.family().is_classical()) {
        let bound = r_op(t) as u32;
        let Some(ls) = c.guard(labels(t), || t.to_string()) else { continue };
        let mut top = 0;
        for l in ls {
            let Some(rec) = c.guard(generic_degree(t, &l), || format!("{t} {l}")) else { continue };
            c.expect(rec.z <= bound, || format!("{t} {l}: z = {} > r(op) = {bound}", rec.z));
            if rec.special && rec.z == bound {
                top += 1;
            }
        }
        c.expect(top <= 1, || format!("{t}: {top} special characters reach z = r(op)"));
    }
    c
}

fn poincare_check() -> Check {
    let mut c = Check::new("poincare_sum_rule", Scope::Backends);
    for t in all_types(6).into_iter().filter(|t| t.family().is_classical()) {
        if let Some(ok) = c.guard(poincare_sum_rule(t), || t.to_string()) {
            c.expect(ok, || format!("{t}: sum of dim(E) D_E differs from the Poincare polynomial"));
        }
    }
    c
}

fn theta_check() -> Check {
    let mut c = Check::new("theta", Scope::Correspondence);
    for wp in all_types(8).into_iter().filter(|t| !t.family().is_classical()) {
        let g = sharp_group(wp);
        for x in g.elements() {
            let Some(th) = c.guard(theta(wp, &x), || format!("{wp} {x:?}")) else { continue };
            let got = th.sorted_values().filter(|v| !v.is_empty());
            let want = theta_values(wp, g.is_identity(&x));
            c.expect(got == want, || format!("{wp} omega {x:?}: theta {got:?}, listed {want:?}"));
        }
    }
    c
}

fn iota_check(max_rank: usize) -> Check {
    let mut c = Check::new("iota", Scope::Correspondence);
    for w in all_types(max_rank) {
        for x in omega_prime(w).elements() {
            if let Some(onto) = c.guard(iota_surjective(w, &x), || format!("{w} {x:?}")) {
                c.expect(onto, || format!("{w} omega {x:?}: iota is not onto"));
            }
            let Some(it) = c.guard(iota_tilde(w, &x), || format!("{w} {x:?}")) else { continue };
            for u in &it.unmapped {
                c.fail(format!(
                    "{w} omega {x:?}: blunt {:?} maps to ({},{}) on {}, which is not a listed sharp triple",
                    u.blunt.params,
                    u.image.t,
                    u.image.r,
                    w.dual()
                ));
            }
            c.expect(it.injective && it.surjective, || format!("{w} omega {x:?}: iota~ is not a bijection"));
        }
    }
    c
}

fn f_check() -> Check {
    let mut c = Check::new("f_map", Scope::Correspondence);
    for case in ALL_CASES {
        let r = check_f(case, 129);
        c.checked += r.checked;
        for e in r.errors {
            c.fail(format!("{case}: {e}"));
        }
        c.expect(r.injective, || format!("{case}: f is not injective"));
        c.expect(r.onto_window, || format!("{case}: f misses part of X"));
    }
    c
}

fn strict_compat_check(max_rank: usize) -> Check {
    let mut c = Check::new("strict_compatibility", Scope::Correspondence);
    for w in all_types(max_rank) {
        for x in omega_prime(w).elements() {
            if let Some(Some(ok)) = c.guard(strict_compatibility(w, &x), || format!("{w} {x:?}")) {
                c.expect(ok, || format!("{w} omega {x:?}: the image of [S0] is not strictly sharp"));
            }
        }
    }
    c
}

fn embedding_check() -> Check {
    let mut c = Check::new("class_embeddings", Scope::Correspondence);
    for k in [3, 4, 5] {
        let Some(e) = c.guard(class_order_embedding(k), || format!("S{k}")) else { continue };
        for im in &e.images {
            c.expect(im.order == im.mark, || format!("S{k} {}: order {} on a node of mark {}", im.label, im.order, im.mark));
        }
        if k == 5 {
            let mut m = e.omitted_marks.clone();
            m.sort_unstable();
            c.expect(m == [3, 4], || format!("E8 omitted marks {m:?}"));
        }
    }
    c
}

/// Runs the checks of `scope` up to `max_rank` for the rank-swept ones.
pub fn run(scope: Scope, max_rank: usize, with_timings: bool) -> VerifyReport {
    let mut checks = Vec::new();
    let mut timings = Vec::new();
    let mut discrepancy_list = Vec::new();
    let mut timed = |f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let c = f();
        timings.push(Timing { check: c.name.into(), millis: start.elapsed().as_millis() as u64 });
        checks.push(c.finish());
    };
    if scope.covers(Scope::Tables) {
        timed(&mut || sharp_list_check(max_rank));
        timed(&mut || strict_list_check(max_rank));
        timed(&mut || blunt_list_check(max_rank));
        timed(&mut || {
            let (c, d) = discrepancies(max_rank);
            discrepancy_list = d;
            c
        });
    }
    if scope.covers(Scope::Lemma27) {
        timed(&mut mod8_check);
    }
    if scope.covers(Scope::Counts) {
        timed(&mut fiber_count_check);
        timed(&mut phi_check);
    }
    if scope.covers(Scope::Backends) {
        timed(&mut backend_check);
        timed(&mut z_check);
        timed(&mut poincare_check);
    }
    if scope.covers(Scope::Correspondence) {
        timed(&mut theta_check);
        timed(&mut || iota_check(max_rank));
        timed(&mut f_check);
        timed(&mut || strict_compat_check(max_rank));
        timed(&mut embedding_check);
    }
    VerifyReport {
        schema: REPORT_SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scope: scope.name().into(),
        max_rank,
        passed: checks.iter().all(|c| c.passed),
        checks,
        discrepancies: discrepancy_list,
        timings: with_timings.then_some(timings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scopes_pass() {
        for s in [Scope::Lemma27, Scope::Counts] {
            let r = run(s, 8, false);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn tables_small() {
        let r = run(Scope::Tables, 12, false);
        assert!(r.passed, "{:#?}", r.checks);
        assert!(!r.discrepancies.is_empty());
    }
}
