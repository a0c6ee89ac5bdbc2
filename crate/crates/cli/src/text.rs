//! Plain-text rendering. Colour is controlled by `PSC_STAB_COLOR`
//! (`auto`, `always`, `never`).

use std::fmt::Write as _;
use std::io::IsTerminal;

use psc_stab::Verdict;

use crate::report::{CatalogReport, HypersurfaceReport, Report};
use crate::selftest::SelftestReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tone {
    Good,
    Warn,
    Bad,
}

#[derive(Debug, Clone, Copy)]
pub struct Style {
    color: bool,
}

impl Style {
    pub fn from_env() -> Self {
        let color = match std::env::var("PSC_STAB_COLOR").as_deref() {
            Ok("always") => true,
            Ok("never") => false,
            _ => std::io::stdout().is_terminal(),
        };
        Style { color }
    }

    pub fn paint(&self, tone: Tone, s: &str) -> String {
        if !self.color {
            return s.to_owned();
        }
        let code = match tone {
            Tone::Good => "32",
            Tone::Warn => "33",
            Tone::Bad => "31",
        };
        format!("\x1b[{code}m{s}\x1b[0m")
    }

    fn flag(&self, b: bool) -> String {
        self.paint(if b { Tone::Good } else { Tone::Bad }, if b { "yes" } else { "no" })
    }
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<18}{value}");
}

pub fn report(r: &Report, st: Style) -> String {
    let mut out = String::new();
    let inv = &r.invariants;
    if let Some(label) = &r.input.form.label {
        line(&mut out, "form", label);
    }
    line(&mut out, "rank", inv.rank);
    line(&mut out, "signature", format!("({}, {})  sigma = {}", inv.signature.p, inv.signature.q, inv.signature.sigma));
    line(&mut out, "unimodular", st.flag(inv.unimodular));
    line(&mut out, "even", st.flag(inv.even));
    line(&mut out, "definiteness", inv.definiteness.as_str());
    line(&mut out, "spin", st.flag(inv.spin));
    line(&mut out, "det", inv.det);
    line(&mut out, "delta_plus", inv.delta_plus);
    line(&mut out, "delta_minus", inv.delta_minus);
    line(&mut out, "dim Eig1", format!("Q: {}  F2: {}", inv.eig1_dim.char0, inv.eig1_dim.char2));
    line(&mut out, "kervaire", format!("Q: {}  F2: {}", inv.kervaire.char0, inv.kervaire.char2));
    line(&mut out, "w2w3", inv.w2w3);
    let [a, b, c] = inv.phi.bits();
    line(&mut out, "phi", format!("({a}, {b}, {c})"));
    line(&mut out, "pi0 class", format!("({}, {})", inv.pi0_class.det_bit, inv.pi0_class.delta_plus_bit));
    line(&mut out, "unit component", st.flag(inv.unit_component));
    line(&mut out, "in spin image", st.flag(inv.in_spin_image));
    line(&mut out, "stable psc", st.flag(r.stable_psc.stably_exists));
    line(&mut out, "", &r.stable_psc.reason);
    if let Some(s) = &r.stabilization {
        let word = match s.verdict {
            Verdict::Guaranteed => st.paint(Tone::Good, "guaranteed"),
            Verdict::Inconclusive => st.paint(Tone::Warn, "inconclusive"),
        };
        let case = s.matched_case.map(|c| format!(" (case {c})")).unwrap_or_default();
        line(&mut out, "stabilization", format!("{word}{case}, n = {}", s.n));
        for c in &s.checks {
            let mark = if c.holds { st.paint(Tone::Good, "+") } else { st.paint(Tone::Bad, "-") };
            let _ = writeln!(out, "  {mark} {:<16}{}", c.name, c.explanation);
        }
    }
    for w in &r.warnings {
        let _ = writeln!(out, "{} {w}", st.paint(Tone::Warn, "warning:"));
    }
    out
}

pub fn catalog_entry(r: &CatalogReport, st: Style) -> String {
    let mut out = String::new();
    line(&mut out, "name", &r.name);
    line(&mut out, "description", &r.description);
    line(&mut out, "spin", st.flag(r.spin));
    line(&mut out, "rank", r.form.matrix.len());
    line(&mut out, "signature", format!("({}, {})  sigma = {}", r.signature.p, r.signature.q, r.signature.sigma));
    line(&mut out, "definiteness", r.definiteness.as_str());
    let names: Vec<&str> = r.known_isometries.iter().map(|m| m.name.as_str()).collect();
    line(&mut out, "isometries", names.join(", "));
    out
}

pub fn hypersurface(r: &HypersurfaceReport, st: Style) -> String {
    let mut out = String::new();
    let inv = &r.invariants;
    line(&mut out, "degree", inv.degree);
    line(&mut out, "euler", &inv.euler.0);
    line(&mut out, "signature", &inv.signature.0);
    line(&mut out, "b2", &inv.b2.0);
    line(&mut out, "b2_plus", &inv.b2_plus.0);
    line(&mut out, "b2_minus", &inv.b2_minus.0);
    line(&mut out, "spin", st.flag(inv.spin));
    line(&mut out, "stable psc", st.flag(r.stable_psc.stably_exists));
    line(&mut out, "", &r.stable_psc.reason);
    if let Some(k) = &r.kahler_example {
        line(&mut out, "Taubes applies", st.flag(k.taubes_obstruction_applies));
    }
    out
}

pub fn selftest(r: &SelftestReport, st: Style) -> String {
    let mut out = String::new();
    let verdict = |ok: bool| if ok { st.paint(Tone::Good, "PASS") } else { st.paint(Tone::Bad, "FAIL") };
    for v in &r.vectors {
        let [a, b, c] = v.actual.bits();
        let _ = writeln!(out, "{} phi({}/{}) = ({a}, {b}, {c})", verdict(v.pass), v.entry, v.isometry);
    }
    if let Some(e) = &r.extended {
        let _ = writeln!(out, "extended suite: seed {:#x}, {} samples per class", e.seed, e.count);
        for run in &e.runs {
            let _ = writeln!(
                out,
                "{} {:<28}{:<8}{} cases, {} failures",
                verdict(run.pass),
                run.property,
                run.class,
                run.cases,
                run.failures
            );
        }
    }
    let _ = writeln!(out, "{}", verdict(r.pass));
    out
}
