use std::fmt;

/// One of the three variables of the ambient ring Q[x, y, z].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

const BITS: u32 = 21;
const MASK: u64 = (1 << BITS) - 1;

/// Exponent triple packed into a u64 as `z | y | x` so that the integer order
/// is the pure lexicographic order with z > y > x.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(ex: u32, ey: u32, ez: u32) -> Mono {
        debug_assert!((ex as u64) <= MASK && (ey as u64) <= MASK && (ez as u64) <= MASK);
        Mono(((ez as u64) << (2 * BITS)) | ((ey as u64) << BITS) | ex as u64)
    }

    pub fn var(v: Var, e: u32) -> Mono {
        let mut ex = [0; 3];
        ex[v.index()] = e;
        Mono::new(ex[0], ex[1], ex[2])
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> (BITS * v.index() as u32)) & MASK) as u32
    }

    pub fn exps(self) -> [u32; 3] {
        [self.exp(Var::X), self.exp(Var::Y), self.exp(Var::Z)]
    }

    pub fn total(self) -> u32 {
        self.exp(Var::X) + self.exp(Var::Y) + self.exp(Var::Z)
    }

    pub fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    pub fn divides(self, other: Mono) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= other.exp(v))
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quo(other: Mono, by: Mono) -> Mono {
        Mono(other.0 - by.0)
    }

    pub fn with_exp(self, v: Var, e: u32) -> Mono {
        let shift = BITS * v.index() as u32;
        Mono((self.0 & !(MASK << shift)) | ((e as u64) << shift))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exps();
        write!(f, "x^{a}y^{b}z^{c}")
    }
}
