//! Molien series of the diagonal `S_n` action, for (anti-)invariants.

use super::permutations;

/// Cycle lengths of a permutation.
fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Dimensions of the bidegree-`(a, b)` (anti-)invariants for
/// `a <= max_x`, `b <= max_y`, from
/// `(1/n!) sum_sigma (+-1)^sigma prod_cycles 1/((1 - q^|c|)(1 - t^|c|))`.
pub fn molien_series(n: usize, sign: bool, max_x: u32, max_y: u32) -> Vec<(u32, u32, usize)> {
    let (w, h) = (max_x as usize + 1, max_y as usize + 1);
    let mut total = vec![0i128; w * h];
    let perms = permutations(n);
    for (p, s) in &perms {
        let mut series = vec![0i128; w * h];
        series[0] = 1;
        for c in cycle_type(p) {
            // Multiply by 1/(1 - q^c) and by 1/(1 - t^c) as running sums.
            for a in c..w {
                for b in 0..h {
                    series[a * h + b] += series[(a - c) * h + b];
                }
            }
            for a in 0..w {
                for b in c..h {
                    series[a * h + b] += series[a * h + b - c];
                }
            }
        }
        let sgn = if sign { *s as i128 } else { 1 };
        for (t, v) in total.iter_mut().zip(series) {
            *t += sgn * v;
        }
    }
    let order = perms.len() as i128;
    let mut out = Vec::new();
    for a in 0..w {
        for b in 0..h {
            let v = total[a * h + b];
            assert_eq!(v % order, 0, "Molien coefficients are integers");
            out.push((a as u32, b as u32, (v / order) as usize));
        }
    }
    out
}
