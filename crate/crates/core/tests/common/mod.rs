//! Published coefficient values shared by the test targets.
#![allow(dead_code)]

use kiv_zeros::series::{rat, ParamPoly};

/// Even polynomial in `s` from `(num, den)` pairs for `s^0, s^2, s^4, ...`.
pub fn even_poly(terms: &[(i64, i64)]) -> ParamPoly {
    let mut coeffs = Vec::new();
    for (i, &(n, d)) in terms.iter().enumerate() {
        if i > 0 {
            coeffs.push(rat(0, 1));
        }
        coeffs.push(rat(n, d));
    }
    ParamPoly::new(coeffs)
}

pub fn poly(terms: &[(i64, i64)]) -> ParamPoly {
    ParamPoly::new(terms.iter().map(|&(n, d)| rat(n, d)).collect())
}

pub fn published_c() -> Vec<ParamPoly> {
    vec![
        even_poly(&[(1, 1)]),
        even_poly(&[(-1, 8), (5, 24)]),
        even_poly(&[(3, 128), (-77, 576), (385, 3456)]),
        even_poly(&[(-5, 1024), (1521, 25600), (-17017, 138240), (17017, 248832)]),
        even_poly(&[
            (35, 32768),
            (-96833, 4300800),
            (144001, 1720320),
            (-1062347, 9953280),
            (1062347, 23887872),
        ]),
        even_poly(&[
            (-63, 262144),
            (67608983, 8670412800),
            (-35840233, 796262400),
            (3094663, 31850496),
            (-154040315, 1719926784),
            (154040315, 5159780352),
        ]),
    ]
}

/// `A_0..A_2` as polynomials in `u = x^2`.
pub fn published_a() -> Vec<ParamPoly> {
    vec![
        poly(&[(1, 12), (-1, 4)]),
        poly(&[(1, 360), (1, 4), (-1, 32)]),
        poly(&[(1, 1260), (-1, 4), (11, 32), (-1, 96)]),
    ]
}
