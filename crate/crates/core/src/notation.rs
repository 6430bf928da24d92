//! Human-readable rendering of classes, series and Laurent elements, using
//! boundary components `D_i` and the line labels `L_ij` where possible.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::affine::{CoverVector, PLFunction};
use crate::lattice::{lines_meeting, twisted_cubics_triangle, CurveClass};
use crate::series::{LaurentElement, TruncatedSeries};
use crate::Rational;

/// Decomposition of a class as `sum c_i D_i` plus at most two lines from one family.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Label {
    delta: [i64; 3],
    lines: Vec<(usize, usize)>,
}

impl Label {
    fn render(&self, line_index: Option<&str>) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.delta.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("D{}", i + 1)),
                c => parts.push(format!("{c}D{}", i + 1)),
            }
        }
        for &(i, j) in &self.lines {
            match line_index {
                Some(sym) => parts.push(format!("L{i}{sym}")),
                None => parts.push(format!("L{i}{j}")),
            }
        }
        parts.join("+")
    }
}

/// The `j`-th (1-based) line meeting `D_i`, in lexicographic order.
pub fn line_label(i: usize, j: usize) -> String {
    format!("L{i}{j}")
}

fn labels() -> &'static HashMap<CurveClass, Label> {
    static TABLE: OnceLock<HashMap<CurveClass, Label>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let d: Vec<CurveClass> = (1..=3).map(|i| CurveClass::boundary(i).unwrap()).collect();
        let mut deltas: Vec<[i64; 3]> = Vec::new();
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    deltas.push([a, b, c]);
                }
            }
        }
        deltas.sort_by_key(|x| (x.iter().sum::<i64>(), std::cmp::Reverse(*x)));
        let families: Vec<Vec<CurveClass>> = (1..=3).map(|i| lines_meeting(i).unwrap()).collect();
        let mut table = HashMap::new();
        let mut offer = |class: CurveClass, label: Label| {
            table.entry(class).or_insert(label);
        };
        for delta in &deltas {
            let base = delta[0] * d[0] + delta[1] * d[1] + delta[2] * d[2];
            offer(base, Label { delta: *delta, lines: vec![] });
        }
        for delta in &deltas {
            let base = delta[0] * d[0] + delta[1] * d[1] + delta[2] * d[2];
            for (fi, fam) in families.iter().enumerate() {
                for (j, l) in fam.iter().enumerate() {
                    offer(base + *l, Label { delta: *delta, lines: vec![(fi + 1, j + 1)] });
                }
            }
        }
        for delta in &deltas {
            let base = delta[0] * d[0] + delta[1] * d[1] + delta[2] * d[2];
            for (fi, fam) in families.iter().enumerate() {
                for a in 0..8 {
                    for b in a..8 {
                        offer(
                            base + fam[a] + fam[b],
                            Label { delta: *delta, lines: vec![(fi + 1, a + 1), (fi + 1, b + 1)] },
                        );
                    }
                }
            }
        }
        table
    })
}

/// `D1+D2+2D3`, `D3+L31`, or the raw `L/E` form when no short label exists.
pub fn class_label(c: &CurveClass) -> String {
    if c.is_zero() {
        return "0".into();
    }
    match labels().get(c) {
        Some(l) => l.render(None),
        None => c.to_string(),
    }
}

fn coeff_prefix(r: &Rational, has_monomial: bool) -> (bool, String) {
    let neg = r.is_negative();
    let a = r.abs();
    let body = if a.is_one() && has_monomial { String::new() } else { format!("{a}") };
    (neg, body)
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

fn monomial_z(class: &CurveClass, r: &Rational, label: &str) -> (bool, String) {
    if class.is_zero() {
        let (neg, body) = coeff_prefix(r, false);
        return (neg, body);
    }
    let (neg, body) = coeff_prefix(r, true);
    let z = format!("z^{{{label}}}");
    (neg, if body.is_empty() { z } else { format!("{body} {z}") })
}

/// Summands of a coefficient series with the eight-line sums folded into `Σ_j`.
fn series_summands(s: &TruncatedSeries, fold: bool) -> Vec<(bool, String)> {
    let table = labels();
    let mut used: Vec<CurveClass> = Vec::new();
    let mut folded: Vec<(CurveClass, (bool, String))> = Vec::new();
    if fold {
        let cubics = twisted_cubics_triangle();
        let first = cubics.iter().next().map(|c| s.coeff(c));
        if let Some(r) = first.filter(|r| !r.is_zero()) {
            if cubics.iter().all(|c| s.coeff(c) == r) {
                let (neg, body) = coeff_prefix(&r, true);
                let text = if body.is_empty() { "Σ_π z^{π*H}".to_string() } else { format!("{body} Σ_π z^{{π*H}}") };
                used.extend(cubics.iter().copied());
                folded.push((*cubics.iter().next().unwrap(), (neg, text)));
            }
        }
        let mut groups: BTreeMap<([i64; 3], usize), Vec<(CurveClass, Rational)>> = BTreeMap::new();
        for (c, r) in s.iter().filter(|(c, _)| !used.contains(c)) {
            if let Some(l) = table.get(c) {
                if l.lines.len() == 1 {
                    groups.entry((l.delta, l.lines[0].0)).or_default().push((*c, r.clone()));
                }
            }
        }
        for ((delta, i), members) in groups {
            if members.len() == 8 && members.iter().all(|(_, r)| *r == members[0].1) {
                let label = Label { delta, lines: vec![(i, 0)] }.render(Some("j"));
                let (neg, body) = coeff_prefix(&members[0].1, true);
                let text = if body.is_empty() {
                    format!("Σ_j z^{{{label}}}")
                } else {
                    format!("{body} Σ_j z^{{{label}}}")
                };
                used.extend(members.iter().map(|(c, _)| *c));
                folded.push((members[0].0, (neg, text)));
            }
        }
    }
    let mut items: Vec<(CurveClass, (bool, String))> = s
        .iter()
        .filter(|(c, _)| !used.contains(c))
        .map(|(c, r)| (*c, monomial_z(c, r, &class_label(c))))
        .collect();
    items.extend(folded);
    items.sort_by_key(|a| a.0);
    items.into_iter().map(|(_, p)| p).collect()
}

/// Series in labelled notation, folding eight-line sums.
pub fn series_pretty(s: &TruncatedSeries) -> String {
    join_signed(series_summands(s, true))
}

/// Series in labelled notation, one summand per class.
pub fn series_plain(s: &TruncatedSeries) -> String {
    join_signed(series_summands(s, false))
}

/// `X1^a X2^b` for the cover exponent `(a, b)`.
pub fn x_monomial(m: &CoverVector) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("X1", m.x), ("X2", m.y)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join(" ")
}

fn laurent_text(e: &LaurentElement, fold: bool) -> String {
    let f = PLFunction::canonical();
    let mut exps: Vec<&CoverVector> = e.by_exponent().keys().collect();
    exps.sort_by_key(|m| (-f.eval(m), **m));
    let mut parts = Vec::new();
    for m in exps {
        let c = &e.by_exponent()[m];
        let summands = series_summands(c, fold);
        let x = x_monomial(m);
        if x.is_empty() {
            parts.extend(summands);
            continue;
        }
        if summands.len() == 1 {
            let (neg, body) = summands.into_iter().next().unwrap();
            let text = if body.is_empty() || body == "1" { x } else { format!("{body} {x}") };
            parts.push((neg, text));
        } else {
            parts.push((false, format!("({}) {x}", join_signed(summands))));
        }
    }
    join_signed(parts)
}

/// Laurent element with `Σ_j` folding, e.g. `1 + Σ_j z^{D3+L3j} X1^-1 X2^-1`.
pub fn laurent_pretty(e: &LaurentElement) -> String {
    laurent_text(e, true)
}

pub fn laurent_plain(e: &LaurentElement) -> String {
    laurent_text(e, false)
}
