//! Shift operators, shift equivalence, shift-freeness, integer linearity and
//! the conjugation maps φ_{α,β}.
//!
//! Shift equivalence `p(v + w) = q(v)` is solved degree by degree: after the
//! top homogeneous parts agree, the component of degree `L` is affine in the
//! directions still free, so each level cuts the rational solution set
//! `w0 + V` by one linear system. Integer points of the final set are found
//! with a column Hermite reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factor::factor;
use crate::arith::gcd::primitive_in;
use crate::arith::{MPoly, Mono, RatFun, Rat, Var};
use crate::error::{Error, Result};

pub type ShiftVector = [i64; 3];

pub fn apply_shift(f: &RatFun, s: ShiftVector) -> RatFun {
    f.shift(s[0], s[1], s[2])
}

fn shift_rat(p: &MPoly, w: &[Rat; 3]) -> MPoly {
    if w.iter().all(|c| c.is_zero()) {
        return p.clone();
    }
    let imgs = [
        &MPoly::var(Var::X) + &MPoly::constant(w[0].clone()),
        &MPoly::var(Var::Y) + &MPoly::constant(w[1].clone()),
        &MPoly::var(Var::Z) + &MPoly::constant(w[2].clone()),
    ];
    p.substitute(&imgs)
}

fn homogeneous(p: &MPoly, deg: u32) -> MPoly {
    MPoly::from_terms(p.terms().iter().filter(|(m, _)| m.total() == deg).cloned().collect())
}

fn directional(p: &MPoly, e: &[Rat; 3]) -> MPoly {
    let mut acc = MPoly::zero();
    for v in Var::ALL {
        if !e[v.index()].is_zero() {
            acc = &acc + &p.derivative(v).scale(&e[v.index()]);
        }
    }
    acc
}

/// Reduced row echelon form over Q; returns pivot columns.
fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, i);
        let inv = m[r][c].recip();
        for j in 0..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Solutions `t` of `sum_i t_i cols[i] + rhs = 0` as `(particular, kernel basis)`.
fn affine_solve(cols: &[MPoly], rhs: &MPoly) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let k = cols.len();
    let mut monos: Vec<Mono> = cols.iter().chain(std::iter::once(rhs)).flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
    monos.sort();
    monos.dedup();
    let coeff = |p: &MPoly, m: Mono| p.terms().iter().find(|t| t.0 == m).map(|t| t.1.clone()).unwrap_or_else(Rat::zero);
    let mut rows: Vec<Vec<Rat>> = monos
        .iter()
        .map(|&m| {
            let mut row: Vec<Rat> = cols.iter().map(|c| coeff(c, m)).collect();
            row.push(coeff(rhs, m));
            row
        })
        .collect();
    let pivots = rref(&mut rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut part = vec![Rat::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        part[c] = -rows[r][k].clone();
    }
    let mut kernel = Vec::new();
    for f in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); k];
        v[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rows[r][f].clone();
        }
        kernel.push(v);
    }
    Some((part, kernel))
}

/// Rational solution set `w0 + span(V)` of `p(v + w) = q` with `w` restricted
/// to `w0_init + span(dirs)`.
fn rational_shift_solutions(p: &MPoly, q: &MPoly, w_init: [Rat; 3], dirs: Vec<[Rat; 3]>) -> Option<([Rat; 3], Vec<[Rat; 3]>)> {
    let n = p.total_degree();
    if n != q.total_degree() || p.len() < 1 {
        return None;
    }
    if homogeneous(p, n) != homogeneous(q, n) {
        return None;
    }
    let mut w0 = w_init;
    let mut v = dirs;
    for level in (0..n).rev() {
        let pt = shift_rat(p, &w0);
        let rhs = &homogeneous(&pt, level) - &homogeneous(q, level);
        if v.is_empty() {
            if !rhs.is_zero() {
                return None;
            }
            continue;
        }
        let top = homogeneous(&pt, level + 1);
        let cols: Vec<MPoly> = v.iter().map(|e| directional(&top, e)).collect();
        let (t, ker) = affine_solve(&cols, &rhs)?;
        for (ti, e) in t.iter().zip(&v) {
            for c in 0..3 {
                w0[c] = &w0[c] + &(ti * &e[c]);
            }
        }
        v = ker
            .iter()
            .map(|kv| {
                let mut d = [Rat::zero(), Rat::zero(), Rat::zero()];
                for (ki, e) in kv.iter().zip(&v) {
                    for c in 0..3 {
                        d[c] = &d[c] + &(ki * &e[c]);
                    }
                }
                d
            })
            .collect();
    }
    if shift_rat(p, &w0) != *q {
        return None;
    }
    Some((w0, v))
}

/// Integer points `base + Z-span(basis)` of an affine rational set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftLattice {
    pub base: [i64; 3],
    pub basis: Vec<[i64; 3]>,
}

fn ortho_complement(v: &[[Rat; 3]]) -> Vec<[Rat; 3]> {
    let mut rows: Vec<Vec<Rat>> = v.iter().map(|e| e.to_vec()).collect();
    if rows.is_empty() {
        return vec![
            [Rat::one(), Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::one(), Rat::zero()],
            [Rat::zero(), Rat::zero(), Rat::one()],
        ];
    }
    let piv = rref(&mut rows, 3);
    let mut out = Vec::new();
    for f in (0..3).filter(|c| !piv.contains(c)) {
        let mut w = [Rat::zero(), Rat::zero(), Rat::zero()];
        w[f] = Rat::one();
        for (r, &c) in piv.iter().enumerate() {
            w[c] = -rows[r][f].clone();
        }
        out.push(w);
    }
    out
}

fn int_row(r: &[Rat; 3]) -> [BigInt; 3] {
    let l = r.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    [0, 1, 2].map(|i| (&r[i] * Rat::from_integer(l.clone())).to_integer())
}

/// Integer solutions of `A w = b` for a 3-column integer matrix.
fn integer_solve(a: &[[BigInt; 3]], b: &[BigInt]) -> Option<ShiftLattice> {
    let mut h: Vec<[BigInt; 3]> = a.to_vec();
    let mut u: [[BigInt; 3]; 3] = [
        [BigInt::one(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::one()],
    ];
    fn col_op(m: &mut [[BigInt; 3]], i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        // (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for row in m.iter_mut() {
            let x = row[i].clone();
            let y = row[j].clone();
            row[i] = a * &x + b * &y;
            row[j] = c * &x + d * &y;
        }
    }
    let mut col = 0;
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new();
    for r in 0..h.len() {
        if col == 3 {
            break;
        }
        for j in col + 1..3 {
            if h[r][j].is_zero() {
                continue;
            }
            let x = h[r][col].clone();
            let y = h[r][j].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xa = &x / &g;
            let ya = &y / &g;
            let m11 = s.clone();
            let m12 = t.clone();
            let m21 = -ya;
            let m22 = xa;
            col_op(&mut h, col, j, &m11, &m12, &m21, &m22);
            col_op(&mut u, col, j, &m11, &m12, &m21, &m22);
        }
        if !h[r][col].is_zero() {
            pivot_rows.push((r, col));
            col += 1;
        }
    }
    let mut y: [BigInt; 3] = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut done = vec![false; h.len()];
    for &(r, c) in &pivot_rows {
        let mut acc = b[r].clone();
        for j in 0..c {
            acc -= &h[r][j] * &y[j];
        }
        let (q, rem) = acc.div_rem(&h[r][c]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q;
        done[r] = true;
    }
    for r in 0..h.len() {
        if !done[r] {
            let mut acc = b[r].clone();
            for j in 0..3 {
                acc -= &h[r][j] * &y[j];
            }
            if !acc.is_zero() {
                return None;
            }
        }
    }
    let to_i64 = |v: &BigInt| v.to_i64().expect("shift fits in i64");
    let mut base = [0i64; 3];
    for i in 0..3 {
        let mut acc = BigInt::zero();
        for k in 0..3 {
            acc += &u[i][k] * &y[k];
        }
        base[i] = to_i64(&acc);
    }
    let basis = (col..3).map(|k| [0, 1, 2].map(|i| to_i64(&u[i][k]))).collect();
    Some(ShiftLattice { base, basis })
}

/// All integer `w` (optionally with `w_x = 0`) such that `p(v + w) = q` up
/// to a rational constant.
pub fn shift_lattice(p: &MPoly, q: &MPoly, fix_x: bool) -> Option<ShiftLattice> {
    let p = p.canonical();
    let q = q.canonical();
    if Var::ALL.iter().any(|&v| p.deg(v) != q.deg(v)) {
        return None;
    }
    let one = Rat::one;
    let zero = Rat::zero;
    let dirs = if fix_x {
        vec![[zero(), one(), zero()], [zero(), zero(), one()]]
    } else {
        vec![[one(), zero(), zero()], [zero(), one(), zero()], [zero(), zero(), one()]]
    };
    let (w0, v) = rational_shift_solutions(&p, &q, [zero(), zero(), zero()], dirs)?;
    let mut cons = ortho_complement(&v);
    if fix_x {
        cons.push([one(), zero(), zero()]);
    }
    let a: Vec<[BigInt; 3]> = cons.iter().map(int_row).collect();
    let b: Vec<BigInt> = a
        .iter()
        .zip(&cons)
        .map(|(row, c)| {
            let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let s: Rat = (0..3).map(|i| &c[i] * &w0[i]).sum::<Rat>() * Rat::from_integer(l);
            let _ = row;
            if s.is_integer() {
                Some(s.to_integer())
            } else {
                None
            }
        })
        .collect::<Option<Vec<_>>>()?;
    integer_solve(&a, &b)
}

fn key(w: &[i64; 3]) -> (i64, [i64; 3]) {
    (w.iter().map(|c| c.abs()).sum(), *w)
}

fn add(a: &[i64; 3], b: &[i64; 3], s: i64) -> [i64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

/// Deterministic small representative: minimal L1 norm, ties broken
/// lexicographically (local search over the lattice basis).
pub fn smallest_point(lat: &ShiftLattice) -> [i64; 3] {
    let mut cur = lat.base;
    let mut moves: Vec<[i64; 3]> = Vec::new();
    for (i, b) in lat.basis.iter().enumerate() {
        moves.push(*b);
        for c in &lat.basis[i + 1..] {
            moves.push(add(b, c, 1));
            moves.push(add(b, c, -1));
        }
    }
    if moves.is_empty() {
        return cur;
    }
    loop {
        let mut best = cur;
        for m in &moves {
            // large steps first along each direction
            for s in [-1i64, 1] {
                let mut t = 1;
                loop {
                    let cand = add(&cur, m, s * t);
                    if key(&cand) < key(&best) {
                        best = cand;
                        t *= 2;
                    } else {
                        break;
                    }
                }
            }
        }
        if best == cur {
            return cur;
        }
        cur = best;
    }
}

/// `(m, n)` with `p = σ_y^m σ_z^n (q)`.
pub fn shift_equiv_yz(p: &MPoly, q: &MPoly) -> Option<(i64, i64)> {
    // p(y+m, z+n) = q with p = shift(q) means q(v + w) = p
    let lat = shift_lattice(q, p, true)?;
    let w = smallest_point(&lat);
    Some((w[1], w[2]))
}

/// `(ℓ, m, n)` with `p = σ_x^ℓ σ_y^m σ_z^n (q)`; the smallest `ℓ ≥ 0` is
/// preferred, then the smallest `(m, n)`.
pub fn shift_equiv_xyz(p: &MPoly, q: &MPoly) -> Option<(i64, i64, i64)> {
    let lat = shift_lattice(q, p, false)?;
    let xi = x_generator(&lat.basis);
    let mut w = lat.base;
    if xi > 0 {
        // move along a lattice vector with x-component xi
        let dir = x_direction(&lat.basis, xi);
        let k = w[0].div_euclid(xi);
        w = add(&w, &dir, -k);
    }
    let rest: Vec<[i64; 3]> = kernel_of_x(&lat.basis);
    let w = smallest_point(&ShiftLattice { base: w, basis: rest });
    Some((w[0], w[1], w[2]))
}

fn x_generator(basis: &[[i64; 3]]) -> i64 {
    basis.iter().fold(0i64, |g, b| g.gcd(&b[0]))
}

/// A lattice vector whose x-component equals the generator `xi`.
fn x_direction(basis: &[[i64; 3]], xi: i64) -> [i64; 3] {
    let mut acc = [0i64; 3];
    let mut g = 0i64;
    for b in basis {
        if b[0] == 0 {
            continue;
        }
        if g == 0 {
            acc = *b;
            g = b[0];
            continue;
        }
        let e = g.extended_gcd(&b[0]);
        acc = [e.x * acc[0] + e.y * b[0], e.x * acc[1] + e.y * b[1], e.x * acc[2] + e.y * b[2]];
        g = e.gcd;
    }
    if g < 0 {
        acc = [-acc[0], -acc[1], -acc[2]];
    }
    debug_assert_eq!(acc[0], xi);
    acc
}

/// Basis of the sublattice with zero x-component.
fn kernel_of_x(basis: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = basis.iter().filter(|b| b[0] == 0).copied().collect();
    let nz: Vec<[i64; 3]> = basis.iter().filter(|b| b[0] != 0).copied().collect();
    if nz.len() >= 2 {
        let mut pivot = nz[0];
        for b in &nz[1..] {
            let g = pivot[0].gcd(&b[0]);
            let comb = add(&[b[0] / g * pivot[0], b[0] / g * pivot[1], b[0] / g * pivot[2]], &[pivot[0] / g * b[0], pivot[0] / g * b[1], pivot[0] / g * b[2]], -1);
            out.push(comb);
            let e = pivot[0].extended_gcd(&b[0]);
            pivot = [e.x * pivot[0] + e.y * b[0], e.x * pivot[1] + e.y * b[1], e.x * pivot[2] + e.y * b[2]];
        }
    }
    out
}

/// Smallest `ξ ≥ 1` with `σ_x^ξ(d) = σ_y^ζ σ_z^η(d)`, returned as `(ξ, ζ, η)`.
pub fn min_x_period(d: &MPoly) -> Option<(i64, i64, i64)> {
    let lat = shift_lattice(d, d, false)?;
    let xi = x_generator(&lat.basis).abs();
    if xi == 0 {
        return None;
    }
    // d(v + w) = d with w = (ξ, -ζ, -η)
    let dir = x_direction(&lat.basis, xi);
    let rest = kernel_of_x(&lat.basis);
    let w = smallest_point(&ShiftLattice { base: dir, basis: rest });
    Some((xi, -w[1], -w[2]))
}

/// `m` with `p = σ_y^m(q)` up to a rational constant.
pub fn y_shift_distance(p: &MPoly, q: &MPoly) -> Option<i64> {
    let n = p.deg(Var::Y);
    if n == 0 || n != q.deg(Var::Y) {
        return None;
    }
    let p = p.canonical();
    let q = q.canonical();
    let qn = q.coeff_in(Var::Y, n);
    if p.coeff_in(Var::Y, n) != qn {
        return None;
    }
    let diff = &p.coeff_in(Var::Y, n - 1) - &q.coeff_in(Var::Y, n - 1);
    let ratio = diff.div_exact(&qn.scale(&Rat::from_integer(BigInt::from(n))))?;
    let c = ratio.constant_value()?;
    if !c.is_integer() {
        return None;
    }
    let m = c.to_integer().to_i64()?;
    if q.shift(0, m, 0) == p {
        Some(m)
    } else {
        None
    }
}

/// Canonical member of the σ_y-orbit of `p`: returns `(σ_y^k(p), k)`.
pub fn y_orbit_rep(p: &MPoly) -> (MPoly, i64) {
    let n = p.deg(Var::Y);
    if n == 0 {
        return (p.canonical(), 0);
    }
    let c = RatFun::new(p.coeff_in(Var::Y, n - 1), p.coeff_in(Var::Y, n));
    let (lm, lam) = c.den().terms()[0].clone();
    let mu = c.num().terms().iter().find(|t| t.0 == lm).map(|t| t.1.clone()).unwrap_or_else(Rat::zero);
    let step = lam * Rat::from_integer(BigInt::from(n));
    // σ_y^k adds n*k to the monic subleading coefficient
    let k = -(mu / step).floor().to_integer().to_i64().expect("small shift");
    (p.shift(0, k, 0).canonical(), k)
}

/// Whether `gcd(p, σ_y^{βℓ}(p)) = 1` for every nonzero integer ℓ.
pub fn is_shift_free(p: &MPoly, beta: i64) -> bool {
    assert!(beta != 0, "step must be nonzero");
    let fs: Vec<MPoly> = factor(p).factors.into_iter().filter(|f| f.base.has_var(Var::Y)).map(|f| f.base).collect();
    for (i, a) in fs.iter().enumerate() {
        for b in &fs[i + 1..] {
            if let Some(m) = y_shift_distance(a, b) {
                if m != 0 && m % beta == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `d = profile(αy + βz)`: the profile is stored with `Z` in the z slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLinType {
    pub alpha: i64,
    pub beta: i64,
    pub profile: MPoly,
}

impl IntLinType {
    /// `αy + βz`
    pub fn combination(&self) -> MPoly {
        MPoly::linear(0, self.alpha, self.beta, 0)
    }

    pub fn expand(&self) -> MPoly {
        let imgs = [MPoly::var(Var::X), MPoly::zero(), self.combination()];
        self.profile.substitute(&imgs)
    }
}

fn proportional(a: &MPoly, b: &MPoly) -> Option<Rat> {
    if a.is_zero() {
        return Some(Rat::zero());
    }
    let (ma, ca) = a.leading()?.clone();
    let (mb, cb) = b.leading()?.clone();
    if ma != mb {
        return None;
    }
    let r = ca / cb;
    if *a == b.scale(&r) {
        Some(r)
    } else {
        None
    }
}

/// Detects `d = p(αy + βz)` with `gcd(α, β) = 1`, `β > 0`.
pub fn integer_linear_type_yz(d: &MPoly) -> Option<IntLinType> {
    if !d.has_var(Var::Z) {
        return None;
    }
    let dy = d.derivative(Var::Y);
    let dz = d.derivative(Var::Z);
    let r = proportional(&dy, &dz)?;
    let alpha = r.numer().to_i64()?;
    let beta = r.denom().to_i64()?;
    let z = MPoly::var(Var::Z).scale(&Rat::new(BigInt::one(), BigInt::from(beta)));
    let profile = d.substitute(&[MPoly::var(Var::X), MPoly::zero(), z]);
    let t = IntLinType { alpha, beta, profile };
    if t.expand() == *d {
        Some(t)
    } else {
        None
    }
}

/// Content-free part of `b` as a polynomial in y over Q[x].
pub fn prim_y(b: &MPoly) -> Result<MPoly> {
    if b.is_zero() {
        return Err(Error::InvalidArgument("prim_y of zero".into()));
    }
    if !b.has_var(Var::Y) {
        return Ok(MPoly::one());
    }
    Ok(primitive_in(b, Var::Y).1)
}

/// `prim_y` of a rational function in x, y: primitive part of the numerator.
pub fn prim_y_ratfun(f: &RatFun) -> Result<MPoly> {
    prim_y(f.num())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XyLinear {
    /// `(factor, λ, μ)` for each irreducible factor `p(λx + μy)`.
    pub factors: Vec<(MPoly, i64, i64)>,
    pub linear: bool,
}

/// Checks whether every irreducible factor of `prim_y(b)` has the form
/// `p(λx + μy)`.
pub fn integer_linear_xy(b: &MPoly) -> Result<XyLinear> {
    if b.has_var(Var::Z) {
        return Err(Error::InvalidArgument("expected a polynomial in x and y".into()));
    }
    let pb = prim_y(b)?;
    if pb.is_constant() {
        return Ok(XyLinear { factors: Vec::new(), linear: true });
    }
    let fz = factor(&pb);
    if !fz.all_certified() {
        return Err(Error::UncertifiedFactor(pb.to_string()));
    }
    let mut out = Vec::new();
    let mut linear = true;
    for f in fz.factors {
        let dx = f.base.derivative(Var::X);
        let dy = f.base.derivative(Var::Y);
        match proportional(&dx, &dy) {
            Some(r) => out.push((f.base, r.numer().to_i64().unwrap_or(0), r.denom().to_i64().unwrap_or(1))),
            None => {
                linear = false;
                out.push((f.base, 0, 0));
            }
        }
    }
    Ok(XyLinear { factors: out, linear })
}

/// `σ_x^ξ(prim_y b) = σ_y^ζ(prim_y b)`.
pub fn xy_shift_compatible(b: &MPoly, xi: i64, zeta: i64) -> Result<bool> {
    let p = prim_y(b)?;
    Ok(p.shift(xi, 0, 0).canonical() == p.shift(0, zeta, 0).canonical())
}

fn phi_images(alpha: i64, beta: i64) -> [MPoly; 3] {
    let b = Rat::from_integer(BigInt::from(beta));
    [
        MPoly::var(Var::X),
        MPoly::var(Var::Y).scale(&b),
        &MPoly::var(Var::Z).scale(&b.recip()) - &MPoly::var(Var::Y).scale(&Rat::from_integer(BigInt::from(alpha))),
    ]
}

fn phi_inv_images(alpha: i64, beta: i64) -> [MPoly; 3] {
    let b = Rat::from_integer(BigInt::from(beta));
    [MPoly::var(Var::X), MPoly::var(Var::Y).scale(&b.recip()), MPoly::linear(0, alpha, beta, 0)]
}

/// φ_{α,β}: y ↦ βy, z ↦ z/β − αy.
pub fn phi_poly(alpha: i64, beta: i64, p: &MPoly) -> MPoly {
    p.substitute(&phi_images(alpha, beta))
}

pub fn phi_inverse_poly(alpha: i64, beta: i64, p: &MPoly) -> MPoly {
    p.substitute(&phi_inv_images(alpha, beta))
}

pub fn phi_map(alpha: i64, beta: i64, f: &RatFun) -> Result<RatFun> {
    if beta == 0 {
        return Err(Error::InvalidArgument("beta must be nonzero".into()));
    }
    Ok(f.substitute_invertible(&phi_images(alpha, beta)))
}

pub fn phi_inverse(alpha: i64, beta: i64, f: &RatFun) -> Result<RatFun> {
    if beta == 0 {
        return Err(Error::InvalidArgument("beta must be nonzero".into()));
    }
    Ok(f.substitute_invertible(&phi_inv_images(alpha, beta)))
}
