//! Wall-time measurements of the whole pipeline on square grids.

use crate::gen::grid;
use crate::mei::{run_mei, Mode};
use serde::Serialize;
use std::fmt::Write;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    /// Requested vertex count.
    pub size: usize,
    pub n: usize,
    pub median_ms: f64,
    /// Median over the previous row's median.
    pub ratio: Option<f64>,
}

/// Grid dimensions with about `size` vertices, as square as possible.
pub fn grid_shape(size: usize) -> (usize, usize) {
    let w = ((size as f64).sqrt().round() as usize).max(1);
    (w, size.div_ceil(w).max(1))
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Median wall time of `repeats` runs per size; the graphs are built outside
/// the clock. Sizes take turns within each round, so a slow spell of the
/// machine lands on all of them rather than on one.
pub fn bench_grid(sizes: &[usize], k: usize, repeats: usize, mode: Mode, seed: u64) -> Vec<BenchRow> {
    let instances: Vec<_> = sizes
        .iter()
        .map(|&size| {
            let (w, h) = grid_shape(size);
            grid(w, h, k, seed)
        })
        .collect();
    let mut times = vec![Vec::new(); sizes.len()];
    for _ in 0..repeats.max(1) {
        for (inst, t) in instances.iter().zip(&mut times) {
            let start = Instant::now();
            run_mei(&inst.g, &inst.f, mode).expect("grids are connected and planar");
            t.push(start.elapsed().as_secs_f64() * 1000.0);
        }
    }
    let mut rows: Vec<BenchRow> = Vec::new();
    for ((&size, inst), t) in sizes.iter().zip(&instances).zip(&mut times) {
        let median_ms = median(t);
        let ratio = rows.last().map(|r| median_ms / r.median_ms);
        rows.push(BenchRow { size, n: inst.g.n(), median_ms, ratio });
    }
    rows
}

pub fn table(rows: &[BenchRow]) -> String {
    let mut s = String::from("size\tn\tmedian_ms\tratio\n");
    for r in rows {
        let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.2}"));
        writeln!(s, "{}\t{}\t{:.1}\t{}", r.size, r.n, r.median_ms, ratio).unwrap();
    }
    s
}
