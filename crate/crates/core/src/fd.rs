//! Finite-difference weights on arbitrary (sorted) nodes.

/// Fornberg's algorithm: weights for derivatives `0..=m` at `x0` from the
/// nodes `xs`. Row `k` of the result holds the weights of the `k`-th
/// derivative.
pub(crate) fn weights(x0: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Index range of the five nodes used at `i`: centred where possible,
/// shifted inwards at the ends.
pub(crate) fn five_point_window(i: usize, n: usize) -> std::ops::Range<usize> {
    let start = i.saturating_sub(2).min(n.saturating_sub(5));
    start..(start + 5).min(n)
}

/// `order`-th derivative of the sampled function at every node, from five
/// neighbouring samples.
pub(crate) fn derivative(xs: &[f64], ys: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let w = five_point_window(i, n);
            let c = weights(xs[i], &xs[w.clone()], order);
            c[order].iter().zip(&ys[w]).map(|(a, b)| a * b).sum()
        })
        .collect()
}
