//! Random instances shared by the property, integration and acceptance tests.
#![allow(dead_code)]

use rand::Rng;
use ratrecon::field::{FieldDescriptor, FieldElement};
use ratrecon::polyrat::{Exponents, Poly1, PolyN, RatFun1, RatFunN};

pub const P_DEMO: u64 = 1_000_003;
pub const P_LARGE: u64 = 1_000_000_007;

pub fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).expect("prime")
}

/// Random `(P, Q)` with the given exact degrees and `gcd(P, Q) = 1`.
pub fn coprime_pair<R: Rng>(field: FieldDescriptor, rng: &mut R, n: usize, m: usize, height: u64) -> (Poly1, Poly1) {
    loop {
        let p = Poly1::random(field, rng, n, height);
        let q = Poly1::random(field, rng, m, height);
        if p.gcd(&q).degree() == Some(0) {
            return (p, q);
        }
    }
}

/// Random reduced univariate function whose numerator and denominator have
/// exactly the degrees `n` and `m`.
pub fn ratfun1_with_degrees<R: Rng>(field: FieldDescriptor, rng: &mut R, n: usize, m: usize, height: u64) -> RatFun1 {
    let (p, q) = coprime_pair(field, rng, n, m, height);
    RatFun1::normalize(p, q).expect("nonzero denominator")
}

/// Random polynomial in `nvars` variables with up to `terms` terms, each
/// exponent at most `max_deg`.
pub fn random_polyn<R: Rng>(field: FieldDescriptor, rng: &mut R, nvars: usize, max_deg: u32, terms: usize, height: u64) -> PolyN {
    let terms: Vec<(Exponents, FieldElement)> = (0..terms)
        .map(|_| {
            let e: Exponents = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (e, field.random_nonzero(rng, height))
        })
        .collect();
    PolyN::from_terms(field, nvars, terms)
}

/// Random rational function of `nvars` variables with every partial degree
/// of numerator and denominator at most `max_deg`. The denominator is never
/// zero; the numerator may be.
pub fn random_ratfunn<R: Rng>(field: FieldDescriptor, rng: &mut R, nvars: usize, max_deg: u32, height: u64) -> RatFunN {
    let num_terms = rng.gen_range(1..=4);
    let num = random_polyn(field, rng, nvars, max_deg, num_terms, height);
    let den = loop {
        let den_terms = rng.gen_range(1..=3);
        let d = random_polyn(field, rng, nvars, max_deg, den_terms, height);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunN::normalize(num, den).expect("nonzero denominator")
}

/// Cross-multiplication equality, independent of canonical forms.
pub fn same_function(f: &RatFunN, g: &RatFunN) -> bool {
    (&(f.num() * g.den()) - &(g.num() * f.den())).is_zero()
}

pub fn distinct_points<R: Rng>(
    field: FieldDescriptor,
    rng: &mut R,
    count: usize,
    height: u64,
    avoid: impl Fn(&FieldElement) -> bool,
) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = Vec::with_capacity(count);
    while out.len() < count {
        let x = field.random_element(rng, height);
        if !avoid(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Independent oracle for univariate interpolation: Lagrange's formula.
pub fn lagrange_eval(points: &[(FieldElement, FieldElement)], a: &FieldElement) -> FieldElement {
    let mut total = a.zero_like();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term = term * (a - xj).checked_div(&(xi - xj)).expect("distinct nodes");
            }
        }
        total = total + term;
    }
    total
}
