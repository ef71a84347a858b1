//! Real roots of low-degree polynomials by closed forms, each polished with
//! two Newton steps on the original polynomial.

/// Coefficients are highest degree first.
fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut f = 0.0;
    let mut df = 0.0;
    for &c in coeffs {
        df = df * x + f;
        f = f * x + c;
    }
    (f, df)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..2 {
        let (f, df) = horner(coeffs, x);
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let next = x - f / df;
        // a step that does not reduce |f| means we are at rounding level
        if !next.is_finite() || horner(coeffs, next).0.abs() > f.abs() {
            break;
        }
        x = next;
    }
    x
}

fn finish(coeffs: &[f64], raw: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = raw.into_iter().filter(|x| x.is_finite()).map(|x| polish(coeffs, x)).collect();
    out.sort_by(f64::total_cmp);
    out
}

/// A constant term at rounding level makes zero a root; dividing it out keeps
/// the double root at zero that the closed forms would smear to `±√ε`.
fn zero_constant(coeffs: &[f64]) -> bool {
    let (last, rest) = coeffs.split_last().expect("non-empty");
    let scale = rest.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    last.abs() <= 4.0 * f64::EPSILON * scale
}

fn with_zero_root(coeffs: &[f64], mut roots: Vec<f64>) -> Vec<f64> {
    roots.push(0.0);
    finish(coeffs, roots)
}

fn is_negligible(lead: f64, rest: &[f64]) -> bool {
    let scale = rest.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    lead == 0.0 || lead.abs() <= 1e-14 * scale
}

/// Real roots of `a x² + b x + c`, ascending.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let coeffs = [a, b, c];
    if is_negligible(a, &[b, c]) {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // keep a near-double root that rounding pushed just below zero
        if disc.abs() <= 1e-14 * b * b {
            return finish(&coeffs, vec![-b / (2.0 * a)]);
        }
        return Vec::new();
    }
    // numerically stable pair
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = Vec::with_capacity(2);
    if q != 0.0 {
        roots.push(q / a);
        roots.push(c / q);
    } else {
        roots.push(0.0);
        roots.push(0.0);
    }
    finish(&coeffs, roots)
}

/// Real roots of `a x³ + b x² + c x + d`, ascending (repeated roots repeat).
pub fn cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let coeffs = [a, b, c, d];
    if is_negligible(a, &[b, c, d]) {
        return quadratic_roots(b, c, d).into_iter().map(|x| polish(&coeffs, x)).collect();
    }
    if zero_constant(&coeffs) {
        return with_zero_root(&coeffs, quadratic_roots(a, b, c));
    }
    let (b, c, d) = (b / a, c / a, d / a);
    // x = y - b/3, y³ + p y + q = 0
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let raw = if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-half_q + if half_q > 0.0 { -s } else { s }).cbrt();
        let y = if u != 0.0 { u - third_p / u } else { 0.0 };
        vec![y - shift]
    } else if third_p == 0.0 {
        vec![-shift; 3]
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        (0..3).map(|k| m * (theta - tau * k as f64).cos() - shift).collect()
    };
    finish(&coeffs, raw)
}

/// Real roots of `a x⁴ + b x³ + c x² + d x + e`, ascending.
pub fn quartic_roots(a: f64, b: f64, c: f64, d: f64, e: f64) -> Vec<f64> {
    let coeffs = [a, b, c, d, e];
    if is_negligible(a, &[b, c, d, e]) {
        return cubic_roots(b, c, d, e).into_iter().map(|x| polish(&coeffs, x)).collect();
    }
    if zero_constant(&coeffs) {
        return with_zero_root(&coeffs, cubic_roots(a, b, c, d));
    }
    let (b, c, d, e) = (b / a, c / a, d / a, e / a);
    // x = y - b/4, y⁴ + p y² + q y + r = 0
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
    let scale = 1.0 + p.abs() + r.abs().sqrt();
    let mut ys = Vec::new();
    if q.abs() <= 1e-14 * scale * scale.sqrt() {
        for z in quadratic_roots(1.0, p, r) {
            if z >= 0.0 {
                let s = z.sqrt();
                ys.push(s);
                ys.push(-s);
            }
        }
    } else {
        // resolvent 8m³ + 8p m² + (2p² - 8r) m - q² = 0 has a positive root
        let m = cubic_roots(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        if m > 0.0 {
            let s = (2.0 * m).sqrt();
            let k = q / (2.0 * s);
            ys.extend(quadratic_roots(1.0, -s, p / 2.0 + m + k));
            ys.extend(quadratic_roots(1.0, s, p / 2.0 + m - k));
        }
    }
    finish(&coeffs, ys.into_iter().map(|y| y - shift).collect())
}

/// Smallest root `≥ 0` of the polynomial (coefficients highest degree first,
/// degree ≤ 4). Roots within `-1e-12` of zero are clamped to zero.
pub fn smallest_nonnegative_root(coeffs: &[f64]) -> Option<f64> {
    let roots = match coeffs {
        [a, b, c] => quadratic_roots(*a, *b, *c),
        [a, b, c, d] => cubic_roots(*a, *b, *c, *d),
        [a, b, c, d, e] => quartic_roots(*a, *b, *c, *d, *e),
        _ => return None,
    };
    roots.into_iter().filter(|&x| x >= -1e-12).map(|x| if x <= 0.0 { 0.0 } else { x }).reduce(f64::min)
}
