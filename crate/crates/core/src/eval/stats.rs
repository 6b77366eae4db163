//! Small statistics helpers.

use statrs::distribution::{Binomial, DiscreteCDF};

use super::EvalError;

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<(), EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(EvalError::Degenerate(format!("need at least 2 points, got {}", xs.len())));
    }
    Ok(())
}

/// Sample Pearson correlation. Constant inputs are an error.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(EvalError::Degenerate("constant input to pearson".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// 1-based ranks with ties sharing their average rank.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation (Pearson over average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    pearson(&ranks(xs), &ranks(ys))
}

pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 })
}

/// Two-sided exact sign test for paired samples. Ties are dropped; with no
/// untied pairs the p-value is 1.
pub fn sign_test(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch(xs.len(), ys.len()));
    }
    let below = xs.iter().zip(ys).filter(|(x, y)| x < y).count() as u64;
    let above = xs.iter().zip(ys).filter(|(x, y)| x > y).count() as u64;
    let n = below + above;
    if n == 0 {
        return Ok(1.0);
    }
    let dist = Binomial::new(0.5, n).map_err(|e| EvalError::Numeric(e.to_string()))?;
    let k = below.min(above);
    Ok((2.0 * dist.cdf(k)).min(1.0))
}
