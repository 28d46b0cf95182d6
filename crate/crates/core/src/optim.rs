//! Small derivative-free simplex minimizer used by the compilers.
//!
//! Nelder-Mead with adaptive restarts is plenty for the 2- and
//! 3-dimensional smooth objectives in this crate; callers run it from
//! several seeded starting points and keep the best result.

/// Minimizes `f` from `start`, returning `(x, f(x))`.
///
/// `scale` sets the initial simplex edge length per coordinate;
/// iteration stops when the simplex collapses below `xatol` and the
/// function spread below `fatol`, or after `max_iter` iterations.
pub fn nelder_mead<const N: usize>(
    f: &dyn Fn(&[f64; N]) -> f64,
    start: [f64; N],
    scale: f64,
    xatol: f64,
    fatol: f64,
    max_iter: usize,
) -> ([f64; N], f64) {
    let mut simplex: Vec<[f64; N]> = Vec::with_capacity(N + 1);
    simplex.push(start);
    for i in 0..N {
        let mut p = start;
        p[i] += scale;
        simplex.push(p);
    }
    let mut fv: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    for _ in 0..max_iter {
        // Order ascending by value.
        let mut idx: Vec<usize> = (0..=N).collect();
        idx.sort_by(|&a, &b| fv[a].partial_cmp(&fv[b]).unwrap_or(std::cmp::Ordering::Equal));
        let ordered: Vec<[f64; N]> = idx.iter().map(|&i| simplex[i]).collect();
        let fo: Vec<f64> = idx.iter().map(|&i| fv[i]).collect();
        simplex = ordered;
        fv = fo;

        let spread_x = (0..N)
            .map(|d| {
                simplex[1..]
                    .iter()
                    .map(|p| (p[d] - simplex[0][d]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread_x < xatol && (fv[N] - fv[0]).abs() < fatol {
            break;
        }

        // Centroid of all but the worst.
        let mut centroid = [0.0; N];
        for p in &simplex[..N] {
            for d in 0..N {
                centroid[d] += p[d] / N as f64;
            }
        }
        let lerp = |a: &[f64; N], b: &[f64; N], t: f64| {
            let mut r = [0.0; N];
            for d in 0..N {
                r[d] = a[d] + t * (b[d] - a[d]);
            }
            r
        };

        let reflected = lerp(&centroid, &simplex[N], -1.0);
        let fr = f(&reflected);
        if fr < fv[0] {
            let expanded = lerp(&centroid, &simplex[N], -2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[N] = expanded;
                fv[N] = fe;
            } else {
                simplex[N] = reflected;
                fv[N] = fr;
            }
        } else if fr < fv[N - 1] {
            simplex[N] = reflected;
            fv[N] = fr;
        } else {
            let contracted = if fr < fv[N] {
                lerp(&centroid, &simplex[N], -0.5)
            } else {
                lerp(&centroid, &simplex[N], 0.5)
            };
            let fc = f(&contracted);
            if fc < fv[N].min(fr) {
                simplex[N] = contracted;
                fv[N] = fc;
            } else {
                // Shrink toward the best vertex.
                for i in 1..=N {
                    simplex[i] = lerp(&simplex[0], &simplex[i], 0.5);
                    fv[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=N {
        if fv[i] < fv[best] {
            best = i;
        }
    }
    (simplex[best], fv[best])
}
