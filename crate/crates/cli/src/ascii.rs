//! Text diagrams: one column per grid point, `█` where a bar is alive.

use std::fmt::Write;

use indumatch::induced::representation;
use indumatch::{Barcode, GMatchingTable, IndexedBar, LadderCode, MMatchingTable, Morphism, RepMatching};

fn strip(n: usize, bar: &IndexedBar) -> String {
    (1..=n).map(|t| if bar.0.contains(t) { '█' } else { '·' }).collect()
}

fn label(bar: &IndexedBar) -> String {
    format!("{}_{}", bar.0, bar.1)
}

fn width(bars: &[IndexedBar]) -> usize {
    bars.iter().map(|b| label(b).chars().count()).max().unwrap_or(0)
}

pub fn barcodes(n: usize, panels: &[(&str, &Barcode)]) -> String {
    let all: Vec<IndexedBar> = panels.iter().flat_map(|(_, b)| b.indexed_bars()).collect();
    let w = width(&all);
    let mut s = String::new();
    for (name, b) in panels {
        writeln!(s, "{name}").unwrap();
        for bar in b.indexed_bars() {
            writeln!(s, "  {:<w$}  {}", label(&bar), strip(n, &bar)).unwrap();
        }
    }
    s
}

/// Two panels: matched pairs side by side, then unmatched bars on each side.
pub fn matching(n: usize, rep: &RepMatching, bv: &Barcode, bu: &Barcode) -> String {
    let w = width(&bv.indexed_bars()).max(width(&bu.indexed_bars()));
    let blank = " ".repeat(n);
    let mut s = String::new();
    for (a, b) in rep.pairs() {
        writeln!(s, "{}  {:<w$}  →  {:<w$}  {}", strip(n, &a), label(&a), label(&b), strip(n, &b)).unwrap();
    }
    for a in rep.unmatched_source(bv) {
        writeln!(s, "{}  {:<w$}", strip(n, &a), label(&a)).unwrap();
    }
    for b in rep.unmatched_target(bu) {
        writeln!(s, "{blank}  {:<w$}     {:<w$}  {}", "", label(&b), strip(n, &b)).unwrap();
    }
    s
}

/// Draws a representation of `m` when one exists; otherwise lists the
/// counts and the bound that fails.
pub fn counts(n: usize, m: &MMatchingTable, bv: &Barcode, bu: &Barcode) -> String {
    match representation(m, bv, bu) {
        Ok(rep) => matching(n, &rep, bv, bu),
        Err(e) => {
            let mut s = String::new();
            for ((i, j), c) in m.iter() {
                writeln!(s, "{i} → {j}  x{c}").unwrap();
            }
            writeln!(s, "not a partial matching: {e}").unwrap();
            s
        }
    }
}

pub fn g_entries(g: &GMatchingTable) -> String {
    let mut s = String::new();
    for ((i, j), b) in g.iter() {
        writeln!(s, "G({i},{j}) = {b}").unwrap();
    }
    s
}

pub fn catalog(entries: &[(LadderCode, Morphism)]) -> String {
    let mut s = String::new();
    for (code, f) in entries {
        writeln!(s, "{code}  V {}  U {}", f.source().barcode(), f.target().barcode()).unwrap();
    }
    s
}
