//! Persistence pairing over arbitrary filtrations, and barcode export.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::SimplicialNetwork;
use crate::error::{Error, Result};
use crate::morse::{Cell, MorseFiltration, Step};

/// A total order on the simplices of a network with non-decreasing values.
#[derive(Clone, Debug, PartialEq)]
pub struct FiltrationOrder {
    entries: Vec<(Cell, f64)>,
}

impl FiltrationOrder {
    /// Checks that values never decrease along the order. Coverage and
    /// face order are checked against a network by [`persistence_pairs`].
    pub fn new(entries: Vec<(Cell, f64)>) -> Result<Self> {
        for (i, w) in entries.windows(2).enumerate() {
            if !(w[0].1 <= w[1].1) {
                return Err(Error::InvalidFiltration {
                    line: Some(i + 1),
                    msg: format!("value {} follows {}", w[1].1, w[0].1),
                });
            }
        }
        Ok(FiltrationOrder { entries })
    }

    /// Orders all simplices by `(value, dimension, index)`.
    /// `values[k][i]` is the value of the i-th k-simplex.
    pub fn from_values(values: &[Vec<f64>]) -> Result<Self> {
        let mut entries: Vec<(Cell, f64)> = values
            .iter()
            .enumerate()
            .flat_map(|(k, vs)| vs.iter().enumerate().map(move |(i, &v)| (Cell::new(k, i as u32), v)))
            .collect();
        if let Some((c, _)) = entries.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidFiltration { line: None, msg: format!("non-finite value for {c:?}") });
        }
        entries.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        Ok(FiltrationOrder { entries })
    }

    pub fn entries(&self) -> &[(Cell, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Simplices in step order, face before coface inside a pair, valued by step.
pub fn order_from_morse(f: &MorseFiltration) -> FiltrationOrder {
    let mut entries = Vec::new();
    for (i, step) in f.steps().iter().enumerate() {
        match *step {
            Step::Critical(c) => entries.push((c, i as f64)),
            Step::Pair(a, b) => {
                entries.push((a, i as f64));
                entries.push((b, i as f64));
            }
        }
    }
    FiltrationOrder { entries }
}

/// One persistence interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bar {
    pub dim: usize,
    pub birth: f64,
    /// `None` for classes that never die.
    pub death: Option<f64>,
    #[serde(skip)]
    pub birth_cell: Cell,
    #[serde(skip)]
    pub death_cell: Option<Cell>,
    pub birth_simplex: Vec<u64>,
    pub death_simplex: Option<Vec<u64>>,
}

impl Bar {
    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }
}

/// Persistence intervals, with zero-length pairs kept apart.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Barcode {
    /// Bars with `birth < death` and infinite bars, sorted by dimension,
    /// birth, then death.
    pub bars: Vec<Bar>,
    /// Pairs born and killed at the same value.
    pub instant: Vec<Bar>,
}

impl Barcode {
    pub fn infinite_counts(&self, dims: usize) -> Vec<usize> {
        let mut c = vec![0; dims];
        for b in self.bars.iter().filter(|b| b.is_infinite()) {
            if b.dim >= c.len() {
                c.resize(b.dim + 1, 0);
            }
            c[b.dim] += 1;
        }
        c
    }
}

/// Standard column reduction of the filtered boundary matrix.
///
/// Columns are reduced from the top dimension down so that columns already
/// known to be paired as births can be skipped; the resulting pairs are the
/// same as those of the plain left-to-right algorithm.
pub fn persistence_pairs(network: &SimplicialNetwork, order: &FiltrationOrder) -> Result<Barcode> {
    let total = network.total_simplices();
    let mut pos: Vec<Vec<u32>> = (0..network.dim_count()).map(|k| vec![u32::MAX; network.count(k)]).collect();
    for (j, &(c, _)) in order.entries.iter().enumerate() {
        let slot = pos
            .get_mut(c.dim)
            .and_then(|p| p.get_mut(c.index as usize))
            .ok_or_else(|| Error::InvalidFiltration { line: Some(j + 1), msg: format!("{c:?} not in network") })?;
        if *slot != u32::MAX {
            return Err(Error::InvalidFiltration {
                line: Some(j + 1),
                msg: format!("{} listed twice", network.display(c.dim, c.index as usize)),
            });
        }
        *slot = j as u32;
    }
    if order.len() != total {
        return Err(Error::InvalidFiltration {
            line: None,
            msg: format!("order lists {} of {total} simplices", order.len()),
        });
    }

    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); total];
    for (j, &(c, _)) in order.entries.iter().enumerate() {
        if c.dim == 0 {
            continue;
        }
        let mut col: Vec<u32> = network
            .faces_of(c.dim, c.index as usize)
            .iter()
            .map(|&f| pos[c.dim - 1][f as usize])
            .collect();
        if let Some(&late) = col.iter().find(|&&p| p as usize >= j) {
            let (fc, _) = order.entries[late as usize];
            return Err(Error::InvalidFiltration {
                line: Some(j + 1),
                msg: format!(
                    "{} precedes its face {}",
                    network.display(c.dim, c.index as usize),
                    network.display(fc.dim, fc.index as usize)
                ),
            });
        }
        col.sort_unstable();
        columns[j] = col;
    }

    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); network.dim_count()];
    for (j, &(c, _)) in order.entries.iter().enumerate() {
        by_dim[c.dim].push(j);
    }
    let mut low_owner: HashMap<u32, usize> = HashMap::new();
    let mut death_of: Vec<Option<usize>> = vec![None; total];
    let mut cleared = vec![false; total];
    for k in (1..network.dim_count()).rev() {
        for &j in &by_dim[k] {
            if cleared[j] {
                columns[j].clear();
                continue;
            }
            let mut col = std::mem::take(&mut columns[j]);
            while let Some(&low) = col.last() {
                match low_owner.get(&low) {
                    Some(&other) => col = xor_sorted(&col, &columns[other]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                low_owner.insert(low, j);
                death_of[low as usize] = Some(j);
                cleared[low as usize] = true;
            }
            columns[j] = col;
        }
    }

    let mut barcode = Barcode::default();
    for (i, &(c, birth)) in order.entries.iter().enumerate() {
        let killer = death_of[i];
        // Columns that reduced to a nonzero are deaths, never births.
        if c.dim > 0 && !columns[i].is_empty() {
            continue;
        }
        let death_cell = killer.map(|j| order.entries[j].0);
        let bar = Bar {
            dim: c.dim,
            birth,
            death: killer.map(|j| order.entries[j].1),
            birth_cell: c,
            death_cell,
            birth_simplex: network.labeled(c.dim, c.index as usize),
            death_simplex: death_cell.map(|d| network.labeled(d.dim, d.index as usize)),
        };
        if bar.death == Some(birth) {
            barcode.instant.push(bar);
        } else {
            barcode.bars.push(bar);
        }
    }
    let key = |b: &Bar| (b.dim, b.birth, b.death.unwrap_or(f64::INFINITY));
    barcode.bars.sort_by(|a, b| key(a).partial_cmp(&key(b)).expect("finite values"));
    Ok(barcode)
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Renders the displayed bars as `text` (`k birth death|inf` per line),
/// `csv`, `structured` (JSON) or `svg`.
pub fn export_barcode(b: &Barcode, format: &str) -> Result<Vec<u8>> {
    match format {
        "text" => {
            let mut out = String::new();
            for bar in &b.bars {
                let death = bar.death.map_or("inf".to_string(), |d| d.to_string());
                writeln!(out, "{} {} {}", bar.dim, bar.birth, death).expect("string write");
            }
            Ok(out.into_bytes())
        }
        "csv" => {
            let mut out = String::from("dim,birth,death,birth_simplex,death_simplex\n");
            for bar in &b.bars {
                let death = bar.death.map_or("inf".to_string(), |d| d.to_string());
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    bar.dim,
                    bar.birth,
                    death,
                    join_labels(&bar.birth_simplex),
                    bar.death_simplex.as_deref().map(join_labels).unwrap_or_default()
                )
                .expect("string write");
            }
            Ok(out.into_bytes())
        }
        "structured" => {
            let doc = serde_json::json!({ "bars": b.bars, "instant_pairs": b.instant.len() });
            Ok(serde_json::to_vec_pretty(&doc).expect("serializable"))
        }
        "svg" => Ok(barcode_svg(b).into_bytes()),
        other => Err(Error::Format(other.to_string())),
    }
}

fn join_labels(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn barcode_svg(b: &Barcode) -> String {
    const LEFT: f64 = 60.0;
    const WIDTH: f64 = 600.0;
    const ROW: f64 = 14.0;
    const GAP: f64 = 24.0;
    let max_value = b
        .bars
        .iter()
        .flat_map(|bar| std::iter::once(bar.birth).chain(bar.death))
        .fold(0.0f64, f64::max);
    // Infinite bars run a little past the largest finite value.
    let span = if max_value > 0.0 { max_value * 1.1 } else { 1.0 };
    let x = |v: f64| LEFT + v / span * WIDTH;

    let mut body = String::new();
    let mut y = 20.0;
    let mut dims: Vec<usize> = b.bars.iter().map(|bar| bar.dim).collect();
    dims.dedup();
    for dim in dims {
        writeln!(body, r#"<text x="4" y="{:.1}" font-size="12">H{dim}</text>"#, y + 10.0).unwrap();
        for bar in b.bars.iter().filter(|bar| bar.dim == dim) {
            let yy = y + ROW / 2.0;
            match bar.death {
                Some(d) => writeln!(
                    body,
                    r#"<line x1="{:.2}" y1="{yy:.1}" x2="{:.2}" y2="{yy:.1}" stroke="black" stroke-width="3"/>"#,
                    x(bar.birth),
                    x(d)
                ),
                None => writeln!(
                    body,
                    r#"<line x1="{:.2}" y1="{yy:.1}" x2="{:.2}" y2="{yy:.1}" stroke="black" stroke-width="3" marker-end="url(#arrow)"/>"#,
                    x(bar.birth),
                    LEFT + WIDTH
                ),
            }
            .unwrap();
            y += ROW;
        }
        y += GAP;
    }
    let height = y + 20.0;
    writeln!(
        body,
        r#"<line x1="{LEFT}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="gray"/>"#,
        height - 16.0,
        LEFT + WIDTH,
        height - 16.0
    )
    .unwrap();
    writeln!(body, r#"<text x="{LEFT}" y="{:.1}" font-size="10">0</text>"#, height - 4.0).unwrap();
    writeln!(
        body,
        r#"<text x="{:.1}" y="{:.1}" font-size="10">{max_value}</text>"#,
        x(max_value),
        height - 4.0
    )
    .unwrap();
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h:.0}" viewBox="0 0 {w} {h:.0}">"#,
            "\n",
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="4" markerHeight="4" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
            "\n{body}</svg>\n"
        ),
        w = LEFT + WIDTH + 40.0,
        h = height,
        body = body
    )
}
