//! Human-readable rendering of a [`Report`].

use std::fmt::Write;

use crate::report::{ComplexJson, Report};

fn short(s: &str) -> String {
    // Keep the mantissa readable: 12 significant digits.
    match s.split_once('e') {
        Some((m, e)) => format!("{}e{e}", trim(m, 13)),
        None => trim(s, 13),
    }
}

fn trim(m: &str, n: usize) -> String {
    let neg = m.starts_with('-');
    let keep = n + usize::from(neg) + usize::from(m.contains('.'));
    m.chars().take(keep).collect()
}

fn z(c: &ComplexJson) -> String {
    if c.im == "0" {
        short(&c.re)
    } else if c.im.starts_with('-') {
        format!("{} - {}i", short(&c.re), short(&c.im[1..]))
    } else {
        format!("{} + {}i", short(&c.re), short(&c.im))
    }
}

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "problem   {}", r.problem);
    let _ = writeln!(w, "stage     {} ({})", r.stage, r.status);
    if let Some(e) = &r.embedding {
        let _ = writeln!(w, "\nembedding in ({})", e.variables.join(", "));
        let _ = writeln!(w, "  G = {}", e.numerator);
        let _ = writeln!(w, "  H = {}", e.denominator);
        let _ = writeln!(w, "  pivot {}, multiplicity {}", e.pivot, e.multiplicity);
        for t in &e.trail {
            let _ = writeln!(w, "  step  {t}");
        }
        if let Some(v) = e.verified {
            let _ = writeln!(w, "  identity check: {}", if v { "passed" } else { "FAILED" });
        }
        for s in &e.search {
            let _ = writeln!(w, "  search shift<= {} pivot {}: {}", s.shift_degree, s.pivot, s.result);
        }
        for m in &e.warnings {
            let _ = writeln!(w, "  warning: {m}");
        }
    }
    if let Some(c) = &r.certificates {
        let _ = writeln!(w, "\ncombinatorial: {}  (K = {})", c.combinatorial, c.k);
        if let Some(a) = c.aperiodic {
            let _ = writeln!(w, "aperiodic:     {a}");
        }
        if let Some(l) = &c.lattice {
            let _ = writeln!(w, "lattice:       {l}");
        }
    }
    if let Some(c) = &r.critical {
        let _ = writeln!(
            w,
            "\ndirection {} (embedded {})",
            c.direction.join(","),
            c.embedded_direction.join(",")
        );
        let _ = writeln!(w, "{} critical point(s):", c.points.len());
        for p in &c.points {
            let coords: Vec<String> = p.coordinates.iter().map(z).collect();
            let _ = writeln!(
                w,
                "  ({})  positive={} smooth={} minimal={}",
                coords.join(", "),
                p.positive,
                p.smooth,
                p.minimal
            );
        }
    }
    if let Some(a) = &r.asymptotics {
        let annotate = |x: &str, rad: &Option<String>| match rad {
            Some(q) => format!("{} = {q}", short(x)),
            None => short(x),
        };
        let _ = writeln!(w, "\n[x^(n*({}))] f ~ C rho^n n^(-alpha)", a.index_step.join(","));
        let _ = writeln!(w, "  rho   = {}", annotate(&a.rho, &a.rho_radical));
        let _ = writeln!(w, "  alpha = {}", a.alpha);
        let _ = writeln!(w, "  C     = {}", annotate(&a.constant, &a.constant_radical));
        for (k, c) in a.expansion_constants.iter().enumerate() {
            let _ = writeln!(w, "  a_{k} (embedded) = {}", z(c));
        }
    }
    if let Some(v) = &r.validation {
        let _ = writeln!(w, "\n{:>8}  {:>22}  {:>12}", "n", "predicted", "rel. error");
        for row in &v.rows {
            let _ = writeln!(w, "{:>8}  {:>22}  {:>12}", row.n, short(&row.predicted), short(&row.relative_error));
        }
        let _ = writeln!(w, "monotone: {}", v.monotone);
        if let Some(l) = &v.limit_ratio {
            let _ = writeln!(w, "extrapolated ratio: {}", short(l));
        }
    }
    if let Some(f) = &r.failure {
        let _ = writeln!(w, "\nFAILED at {} [{}]: {}", f.stage, f.kind, f.message);
    }
    out
}
