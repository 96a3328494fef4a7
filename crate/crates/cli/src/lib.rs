//! Pieces of the `mwnw` command that are worth testing without spawning
//! the binary: the reproduction report and the human-readable table.

pub mod reproduce;

use mwnw::model::format_rational;
use mwnw::{Allocation, Instance, UtilityVector};

/// `{g1,g2}` style rendering of a set of goods.
pub fn format_goods<'a>(inst: &Instance, goods: impl IntoIterator<Item = &'a usize>) -> String {
    let names: Vec<&str> = goods
        .into_iter()
        .map(|&g| inst.good_names()[g].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

/// One row per agent with weight, bundle and utility, then the pool.
pub fn pretty_table(inst: &Instance, alloc: &Allocation, utilities: &UtilityVector) -> String {
    let rows: Vec<[String; 4]> = (0..inst.n())
        .map(|i| {
            [
                inst.agent_names()[i].clone(),
                format_rational(inst.weight(i)),
                format_goods(inst, alloc.bundle(i)),
                utilities.0[i].to_string(),
            ]
        })
        .collect();
    let header = ["agent", "weight", "bundle", "utility"];
    let width = |c: usize| {
        rows.iter()
            .map(|r| r[c].len())
            .chain([header[c].len()])
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..4).map(width).collect();
    let line = |cells: [&str; 4]| {
        let mut s = String::new();
        for (c, cell) in cells.iter().enumerate() {
            if c > 0 {
                s.push_str("  ");
            }
            s.push_str(&format!("{cell:<w$}", w = widths[c]));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for r in &rows {
        out += &line([&r[0], &r[1], &r[2], &r[3]]);
    }
    out += &format!("unallocated: {}\n", format_goods(inst, alloc.unallocated()));
    out
}
