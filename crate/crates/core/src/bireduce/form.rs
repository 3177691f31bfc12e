//! Remainder forms: groups of fractions `a/(b·d^j)` sharing an irreducible
//! `d`, with `b` free of z.

use std::fmt;

use crate::arith::gcd::lcm;
use crate::arith::{MPoly, RatFun, Var};
use crate::shift::{integer_linear_type_yz, is_shift_free, shift_equiv_yz, IntLinType};

/// `c / d^j` for the enclosing group's `d`; `c = a/b` with `b` free of z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemTerm {
    pub j: u32,
    pub c: RatFun,
}

impl RemTerm {
    pub fn a(&self) -> &MPoly {
        self.c.num()
    }

    pub fn b(&self) -> &MPoly {
        self.c.den()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub d: MPoly,
    pub lin: Option<IntLinType>,
    /// Sorted by `j`, at most one term per `j`, all nonzero.
    pub terms: Vec<RemTerm>,
}

impl Group {
    pub fn new(d: MPoly) -> Group {
        let lin = integer_linear_type_yz(&d);
        Group { d, lin, terms: Vec::new() }
    }

    /// Adds `c / d^j`, merging with an existing term of the same `j`.
    pub fn add(&mut self, j: u32, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&j, |t| t.j) {
            Ok(i) => {
                let s = &self.terms[i].c + &c;
                if s.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].c = s;
                }
            }
            Err(i) => self.terms.insert(i, RemTerm { j, c }),
        }
    }

    pub fn term(&self, j: u32) -> Option<&RemTerm> {
        self.terms.iter().find(|t| t.j == j)
    }

    pub fn multiplicity(&self) -> u32 {
        self.terms.iter().map(|t| t.j).max().unwrap_or(0)
    }

    pub fn to_ratfun(&self) -> RatFun {
        self.terms.iter().fold(RatFun::zero(), |acc, t| &acc + &t.c.div_poly(&self.d.pow(t.j)))
    }

    pub fn shift_x(&self, k: i64) -> Group {
        Group {
            d: self.d.shift(k, 0, 0),
            lin: self.lin.as_ref().map(|l| IntLinType { profile: l.profile.shift(k, 0, 0), ..l.clone() }),
            terms: self.terms.iter().map(|t| RemTerm { j: t.j, c: t.c.shift(k, 0, 0) }).collect(),
        }
    }

    pub fn scale(&self, c: &RatFun) -> Group {
        let mut g = Group { d: self.d.clone(), lin: self.lin.clone(), terms: Vec::new() };
        for t in &self.terms {
            g.add(t.j, &t.c * c);
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RemainderForm {
    pub groups: Vec<Group>,
}

impl RemainderForm {
    pub fn zero() -> RemainderForm {
        RemainderForm { groups: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(|g| g.terms.is_empty())
    }

    pub fn group(&self, d: &MPoly) -> Option<&Group> {
        self.groups.iter().find(|g| g.d == *d)
    }

    /// Adds `c / d^j` to the group of `d`, creating it when absent.
    pub fn add(&mut self, d: &MPoly, j: u32, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.groups.iter_mut().position(|g| g.d == *d) {
            Some(i) => {
                self.groups[i].add(j, c);
                if self.groups[i].terms.is_empty() {
                    self.groups.remove(i);
                }
            }
            None => {
                let mut g = Group::new(d.clone());
                g.add(j, c);
                self.groups.push(g);
            }
        }
    }

    pub fn add_form(&mut self, o: &RemainderForm) {
        for g in &o.groups {
            for t in &g.terms {
                self.add(&g.d, t.j, t.c.clone());
            }
        }
    }

    pub fn to_ratfun(&self) -> RatFun {
        self.groups.iter().fold(RatFun::zero(), |acc, g| &acc + &g.to_ratfun())
    }

    pub fn shift_x(&self, k: i64) -> RemainderForm {
        RemainderForm { groups: self.groups.iter().map(|g| g.shift_x(k)).collect() }
    }

    pub fn scale(&self, c: &RatFun) -> RemainderForm {
        if c.is_zero() {
            return RemainderForm::zero();
        }
        RemainderForm { groups: self.groups.iter().map(|g| g.scale(c)).collect() }
    }

    pub fn num_terms(&self) -> usize {
        self.groups.iter().map(|g| g.terms.len()).sum()
    }

    /// Orders groups by their canonical key for deterministic output.
    pub fn sort(&mut self) {
        self.groups.sort_by(|a, b| class_key(&a.d).cmp(&class_key(&b.d)));
    }
}

impl fmt::Display for RemainderForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for g in &self.groups {
            for t in &g.terms {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({})/(({})*({})^{})", t.a(), t.b(), g.d, t.j)?;
            }
        }
        Ok(())
    }
}

/// Canonical ordering key used to choose class representatives.
pub fn class_key(d: &MPoly) -> (u32, u32, u32, MPoly) {
    (d.deg(Var::Z), d.deg(Var::Y), d.total_degree(), d.clone())
}

/// Condition for `c/d^j` to be a remainder fraction.
pub fn valid_term(d: &MPoly, lin: Option<&IntLinType>, t: &RemTerm) -> bool {
    if t.c.is_zero() || t.j == 0 || t.b().has_var(Var::Z) || t.a().deg(Var::Z) >= d.deg(Var::Z) {
        return false;
    }
    match lin {
        None => true,
        Some(l) => lin_structure_ok(t.a(), t.b(), l),
    }
}

/// `b` σ_y^β-free and every coefficient of `a` in `αy + βz` has y-degree
/// below `deg_y b`.
pub fn lin_structure_ok(a: &MPoly, b: &MPoly, l: &IntLinType) -> bool {
    if !is_shift_free(b, l.beta) {
        return false;
    }
    let db = b.deg(Var::Y);
    crate::abramov::z_coefficients(a, l.alpha, l.beta).iter().all(|c| c.is_zero() || c.deg(Var::Y) < db)
}

fn valid_group(g: &Group) -> bool {
    if g.terms.is_empty() || g.d.deg(Var::Z) == 0 || g.d != g.d.canonical() {
        return false;
    }
    if !crate::arith::factor::is_certified_irreducible(&g.d) {
        return false;
    }
    if g.lin != integer_linear_type_yz(&g.d) {
        return false;
    }
    let sorted = g.terms.windows(2).all(|w| w[0].j < w[1].j);
    sorted && g.terms.iter().all(|t| valid_term(&g.d, g.lin.as_ref(), t))
}

/// Checks every structural invariant of a remainder form.
pub fn validate_remainder_form(r: &RemainderForm) -> bool {
    if !r.groups.iter().all(valid_group) {
        return false;
    }
    for (i, a) in r.groups.iter().enumerate() {
        for b in &r.groups[i + 1..] {
            if shift_equiv_yz(&a.d, &b.d).is_some() {
                return false;
            }
        }
    }
    true
}

/// Whether `Σ c_k·forms[k]` is a remainder form for all scalars `c_k`:
/// terms over the same `(d, j)` are merged over the lcm of their `b`.
pub fn validate_combination(forms: &[&RemainderForm]) -> bool {
    if !forms.iter().all(|f| validate_remainder_form(f)) {
        return false;
    }
    let mut ds: Vec<&Group> = Vec::new();
    for f in forms {
        for g in &f.groups {
            if ds.iter().any(|h| h.d == g.d) {
                continue;
            }
            if ds.iter().any(|h| shift_equiv_yz(&h.d, &g.d).is_some()) {
                return false;
            }
            ds.push(g);
        }
    }
    for g in ds {
        let Some(l) = &g.lin else { continue };
        let mut js: Vec<u32> = forms.iter().filter_map(|f| f.group(&g.d)).flat_map(|h| h.terms.iter().map(|t| t.j)).collect();
        js.sort();
        js.dedup();
        for j in js {
            let terms: Vec<&RemTerm> = forms.iter().filter_map(|f| f.group(&g.d)).filter_map(|h| h.term(j)).collect();
            let bstar = terms.iter().fold(MPoly::one(), |acc, t| lcm(&acc, t.b()));
            if !is_shift_free(&bstar, l.beta) {
                return false;
            }
            for t in terms {
                let scaled = t.a() * &bstar.div_exact(t.b()).expect("lcm");
                if !lin_structure_ok(&scaled, &bstar, l) {
                    return false;
                }
            }
        }
    }
    true
}
