//! Irreducible factorization of rational polynomials, via Berlekamp
//! factorization modulo a small prime, quadratic Hensel lifting, and
//! subset recombination with exact trial division over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ratpoly::RatPoly;

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
];

/// Monic irreducible factors with multiplicities, sorted for determinism.
/// The leading coefficient is dropped (factors of a rational polynomial are
/// only defined up to scalars).
pub fn factor_rational(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>, crate::ratpoly::PolyError> {
    let mut out: Vec<(RatPoly, usize)> = Vec::new();
    for (sf, mult) in p.squarefree_decomposition()? {
        for factor in factor_squarefree(&sf) {
            out.push((factor, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    Ok(out)
}

/// Factor a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree(f: &RatPoly) -> Vec<RatPoly> {
    let deg = match f.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![f.monic()],
        Some(d) => d,
    };
    // clear denominators to a primitive integer polynomial
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

    // monicize: F(x) = l^(n-1) g(x/l) is monic over Z,
    // with coefficient of x^k equal to prim[k] * l^(deg-1-k)
    let l = prim[deg].clone();
    let mut monic = vec![BigInt::zero(); deg + 1];
    for (k, c) in prim.iter().enumerate() {
        if k == deg {
            monic[k] = BigInt::one();
            continue;
        }
        let mut v = c.clone();
        for _ in 0..(deg - 1 - k) {
            v *= &l;
        }
        monic[k] = v;
    }

    let int_factors = factor_monic_squarefree(&monic);

    // a factor G of F has roots l*r for roots r of g, so the matching factor
    // of g is G(l x) up to scalar
    let l_rat = BigRational::from_integer(l);
    int_factors
        .into_iter()
        .map(|g| RatPoly::from_bigints(&g).compose_scale_x(&l_rat).monic())
        .collect()
}

/// Factor a monic squarefree integer polynomial into monic integer factors.
fn factor_monic_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![f.to_vec()];
    }
    let (p, modular) = SMALL_PRIMES
        .iter()
        .find_map(|&p| {
            let fp = reduce_mod(f, p);
            if fp.len() != f.len() {
                return None; // cannot happen for monic f, kept for clarity
            }
            if !is_squarefree_mod(&fp, p) {
                return None;
            }
            Some((p, berlekamp(&fp, p)))
        })
        .expect("a squarefree integer polynomial is squarefree mod some small prime");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Mignotte-style bound on factor coefficients, deliberately generous
    let height: BigInt = f.iter().map(|c| c.abs()).fold(BigInt::zero(), |a, b| a.max(b));
    let bound: BigInt = (BigInt::one() << (deg + 2)) * height * BigInt::from(deg as u64 + 1);
    let mut modulus = BigInt::from(p);
    let mut exp = 1usize;
    while modulus <= BigInt::from(2) * &bound {
        modulus = &modulus * &modulus;
        exp *= 2;
    }

    let lifted = hensel_lift_tree(
        f,
        &modular
            .iter()
            .map(|g| g.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        p,
        &modulus,
    );
    let _ = exp;
    recombine(f, lifted, &modulus)
}

// ---- arithmetic mod a small prime -------------------------------------

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(r).expect("reduced residue fits")
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn poly_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    let mut quot = vec![0u64; a.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = rem[dr] * lead_inv % p;
        if coef != 0 {
            quot[dr - db] = coef;
            for (k, &bc) in b.iter().enumerate() {
                let sub = coef * bc % p;
                let idx = dr - db + k;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        rem.pop();
        poly_trim(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    poly_trim(&mut rem);
    (quot, rem)
}

fn poly_gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = mod_inv(lc, p);
        for c in &mut x {
            *c = *c * inv % p;
        }
    }
    x
}

fn poly_deriv_mod(f: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| (k as u64 % p) * c % p)
        .collect();
    poly_trim(&mut out);
    out
}

fn is_squarefree_mod(f: &[u64], p: u64) -> bool {
    let d = poly_deriv_mod(f, p);
    if d.is_empty() {
        return false;
    }
    poly_gcd_mod(f, &d, p).len() == 1
}

/// Berlekamp factorization of a monic squarefree polynomial mod p.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    // rows of Q: x^(p*i) mod f
    let mut q = vec![vec![0u64; n]; n];
    let xp = {
        // x^p mod f by square-and-multiply on exponent p
        let mut acc = vec![1u64];
        let x = vec![0, 1];
        let mut e = p;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_divrem_mod(&poly_mul_mod(&acc, &base, p), f, p).1;
            }
            base = poly_divrem_mod(&poly_mul_mod(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut row = vec![1u64]; // x^(p*0)
    for i in 0..n {
        for (j, &c) in row.iter().enumerate() {
            q[i][j] = c;
        }
        row = poly_divrem_mod(&poly_mul_mod(&row, &xp, p), f, p).1;
    }
    // nullspace of (Q - I)^T, i.e. vectors v with v Q = v
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[j][i] = q[i][j]; // transpose
        }
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = nullspace_mod(&mut m, p);
    let r = basis.len();
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    'outer: for v in &basis {
        if factors.len() == r {
            break;
        }
        let mut vpoly = v.clone();
        poly_trim(&mut vpoly);
        if vpoly.len() <= 1 {
            continue; // constant subalgebra element splits nothing
        }
        for s in 0..p {
            let mut shifted = vpoly.clone();
            if shifted.is_empty() {
                shifted.push(0);
            }
            shifted[0] = (shifted[0] + p - s) % p;
            poly_trim(&mut shifted);
            if shifted.is_empty() {
                continue;
            }
            let mut next = Vec::new();
            for fac in factors.drain(..) {
                if fac.len() <= 2 {
                    next.push(fac);
                    continue;
                }
                let g = poly_gcd_mod(&fac, &shifted, p);
                if g.len() > 1 && g.len() < fac.len() {
                    let (q1, _) = poly_divrem_mod(&fac, &g, p);
                    next.push(g);
                    next.push(q1);
                } else {
                    next.push(fac);
                }
            }
            factors = next;
            if factors.len() == r {
                continue 'outer;
            }
        }
    }
    // monic-normalize
    for fac in &mut factors {
        if let Some(&lc) = fac.last() {
            if lc != 1 {
                let inv = mod_inv(lc, p);
                for c in fac.iter_mut() {
                    *c = *c * inv % p;
                }
            }
        }
    }
    factors
}

fn nullspace_mod(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = mod_inv(m[rank][col], p);
        for c in m[rank].iter_mut() {
            *c = *c * inv % p;
        }
        for r in 0..n {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    let sub = factor * m[rank][c] % p;
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row[rank] = col;
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..rank].to_vec();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            let val = m[row][free];
            if val != 0 {
                v[pc] = (p - val) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting -----------------------------------------------------

fn big_mod(c: &BigInt, m: &BigInt) -> BigInt {
    c.mod_floor(m)
}

fn bpoly_mod(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = f.iter().map(|c| big_mod(c, m)).collect();
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn bpoly_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    bpoly_mod(&out, m)
}

fn bpoly_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let get = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_else(BigInt::zero);
    let out: Vec<BigInt> = (0..n).map(|k| get(a, k) - get(b, k)).collect();
    bpoly_mod(&out, m)
}

fn bpoly_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let get = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_else(BigInt::zero);
    let out: Vec<BigInt> = (0..n).map(|k| get(a, k) + get(b, k)).collect();
    bpoly_mod(&out, m)
}

/// Division with remainder mod m; the divisor must be monic.
fn bpoly_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem = bpoly_mod(a, m);
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let coef = rem[dr].clone();
        if !coef.is_zero() {
            quot[dr - db] = coef.clone();
            for (k, bc) in b.iter().enumerate() {
                let idx = dr - db + k;
                let v = &rem[idx] - &coef * bc;
                rem[idx] = big_mod(&v, m);
            }
        }
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
    }
    (bpoly_mod(&quot, m), rem)
}

/// Lift `f = prod(factors) mod p` to the same shape mod `modulus` by a
/// balanced product tree of quadratic Hensel pair steps.
fn hensel_lift_tree(
    f: &[BigInt],
    factors: &[Vec<BigInt>],
    p: u64,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![bpoly_mod(f, modulus)];
    }
    let mid = factors.len() / 2;
    let pb = BigInt::from(p);
    let g0 = factors[..mid]
        .iter()
        .fold(vec![BigInt::one()], |acc, fac| bpoly_mul(&acc, fac, &pb));
    let h0 = factors[mid..]
        .iter()
        .fold(vec![BigInt::one()], |acc, fac| bpoly_mul(&acc, fac, &pb));
    let (g, h) = hensel_pair(f, &g0, &h0, p, modulus);
    let mut out = hensel_lift_tree(&g, &factors[..mid], p, modulus);
    out.extend(hensel_lift_tree(&h, &factors[mid..], p, modulus));
    out
}

/// Quadratic Hensel lifting of a monic coprime pair `f = g h (mod p)` up to
/// at least `target` modulus.
fn hensel_pair(
    f: &[BigInt],
    g0: &[BigInt],
    h0: &[BigInt],
    p: u64,
    target: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    // Bezout mod p via the u64 kernels
    let to_u64 = |v: &[BigInt]| -> Vec<u64> {
        v.iter()
            .map(|c| u64::try_from(c.mod_floor(&BigInt::from(p))).unwrap())
            .collect()
    };
    let (s0, t0) = poly_ext_gcd_mod(&to_u64(g0), &to_u64(h0), p);
    let from_u64 = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };

    let mut m = BigInt::from(p);
    let mut g = g0.to_vec();
    let mut h = h0.to_vec();
    let mut s = from_u64(&s0);
    let mut t = from_u64(&t0);
    while &m < target {
        let m2 = &m * &m;
        // e = f - g h
        let e = bpoly_sub(f, &bpoly_mul(&g, &h, &m2), &m2);
        let se = bpoly_mul(&s, &e, &m2);
        let (q, r) = bpoly_divrem_monic(&se, &h, &m2);
        let g_new = bpoly_add(&bpoly_add(&g, &bpoly_mul(&t, &e, &m2), &m2), &bpoly_mul(&q, &g, &m2), &m2);
        let h_new = bpoly_add(&h, &r, &m2);
        // lift the Bezout pair
        let one = vec![BigInt::one()];
        let b = bpoly_sub(
            &bpoly_add(
                &bpoly_mul(&s, &g_new, &m2),
                &bpoly_mul(&t, &h_new, &m2),
                &m2,
            ),
            &one,
            &m2,
        );
        let sb = bpoly_mul(&s, &b, &m2);
        let (c, d) = bpoly_divrem_monic(&sb, &h_new, &m2);
        let s_new = bpoly_sub(&s, &d, &m2);
        let t_new = bpoly_sub(
            &bpoly_sub(&t, &bpoly_mul(&t, &b, &m2), &m2),
            &bpoly_mul(&c, &g_new, &m2),
            &m2,
        );
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    (bpoly_mod(&g, &m), bpoly_mod(&h, &m))
}

/// Extended gcd for coprime monic polys mod p: returns (s, t) with
/// `s a + t b = 1 (mod p)`.
fn poly_ext_gcd_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem_mod(&r0, &r1, p);
        let next_s = poly_sub_mod(&s0, &poly_mul_mod(&q, &s1, p), p);
        let next_t = poly_sub_mod(&t0, &poly_mul_mod(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, next_s);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    // r0 is a nonzero constant (inputs coprime); normalize to 1
    let inv = mod_inv(r0[0], p);
    let scale = |v: &[u64]| -> Vec<u64> { v.iter().map(|&c| c * inv % p).collect() };
    (scale(&s0), scale(&t0))
}

fn poly_sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let get = |v: &[u64], k: usize| v.get(k).copied().unwrap_or(0);
    let mut out: Vec<u64> = (0..n).map(|k| (get(a, k) + p - get(b, k)) % p).collect();
    poly_trim(&mut out);
    out
}

// ---- recombination ------------------------------------------------------

fn symmetric(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / BigInt::from(2);
    f.iter()
        .map(|c| {
            let r = big_mod(c, m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Exact division of integer polynomials (divisor monic): `Some(quot)` iff
/// the remainder vanishes.
fn try_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.is_empty() || !g.last().unwrap().is_one() || g.len() > f.len() {
        return None;
    }
    let dg = g.len() - 1;
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - dg];
    while rem.len() > dg {
        let dr = rem.len() - 1;
        let coef = rem[dr].clone();
        quot[dr - dg] = coef.clone();
        for (k, gc) in g.iter().enumerate() {
            let idx = dr - dg + k;
            let v = &rem[idx] - &coef * gc;
            rem[idx] = v;
        }
        rem.pop();
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

fn recombine(f: &[BigInt], mut modular: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1usize;
    while 2 * size <= modular.len() {
        let mut advanced = false;
        for mask in subsets_of_size(modular.len(), size) {
            let mut cand = vec![BigInt::one()];
            for (i, fac) in modular.iter().enumerate() {
                if mask & (1usize << i) != 0 {
                    cand = bpoly_mul(&cand, fac, modulus);
                }
            }
            let cand = symmetric(&cand, modulus);
            if let Some(quot) = try_exact_div(&f, &cand) {
                found.push(cand);
                f = quot;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1usize << i) == 0)
                    .map(|(_, v)| v)
                    .collect();
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

fn subsets_of_size(n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for mask in 0usize..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_i64(coeffs)
    }

    fn product(factors: &[(RatPoly, usize)]) -> RatPoly {
        let mut acc = RatPoly::one();
        for (f, m) in factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    #[test]
    fn splits_a_quadratic() {
        // (t-1)(t+3) = t^2 + 2t - 3
        let p = poly(&[-3, 2, 1]);
        let f = factor_rational(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(product(&f), p.monic());
    }

    #[test]
    fn keeps_irreducibles_whole() {
        // t^2 + 1 and t^4 - 10t^2 + 1 (minimal poly of sqrt2 + sqrt3)
        for coeffs in [vec![1i64, 0, 1], vec![1, 0, -10, 0, 1]] {
            let p = poly(&coeffs);
            let f = factor_rational(&p).unwrap();
            assert_eq!(f.len(), 1, "{:?} should be irreducible", p);
            assert_eq!(f[0].0, p.monic());
        }
    }

    #[test]
    fn handles_multiplicity() {
        // (t-2)^2 (t^2+t+1)
        let p = poly(&[-2, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[1, 1, 1]));
        let f = factor_rational(&p).unwrap();
        assert_eq!(product(&f), p.monic());
        let mults: Vec<usize> = f.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
    }

    #[test]
    fn non_monic_and_rational_input() {
        // 6 (t - 1/2)(t - 1/3) = 6t^2 - 5t + 1
        let p = poly(&[1, -5, 6]);
        let f = factor_rational(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(product(&f), p.monic());
    }

    #[test]
    fn degree_eight_products() {
        // (t^4+1)(t^4+2): both irreducible over Q
        let p = poly(&[1, 0, 0, 0, 1]).mul(&poly(&[2, 0, 0, 0, 1]));
        let f = factor_rational(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(product(&f), p.monic());
    }

    #[test]
    fn cyclotomic_like_splits() {
        // t^8 - 1 = (t-1)(t+1)(t^2+1)(t^4+1)
        let p = poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let f = factor_rational(&p).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(product(&f), p.monic());
    }
}
