//! The fixed variable universe and variable blocks.

use std::fmt;

/// Number of variables in the universe.
pub const NVARS: usize = 26;

const NAMES: [&str; NVARS] = [
    "t1", "t2", "t3", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4", "z11", "z12", "z13", "z21",
    "z22", "z23", "z31", "z32", "z33", "h1", "h2", "u1", "u2", "u3", "u4",
];

/// The block a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// Projective parameters `t1, t2, t3`.
    T,
    /// First coefficient block `x1..x4`.
    X,
    /// Second coefficient block `y1..y4`.
    Y,
    /// Generic transformation entries `z11..z33`.
    Z,
    /// Auxiliary parameters `h1, h2`.
    H,
    /// Ambient coordinates `u1..u4`.
    U,
}

/// A variable of the fixed universe, identified by its position in the
/// canonical variable order `t1 > t2 > t3 > x1 > ... > u4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub const T1: Var = Var(0);
    pub const T2: Var = Var(1);
    pub const T3: Var = Var(2);
    pub const X1: Var = Var(3);
    pub const X2: Var = Var(4);
    pub const X3: Var = Var(5);
    pub const X4: Var = Var(6);
    pub const Y1: Var = Var(7);
    pub const Y2: Var = Var(8);
    pub const Y3: Var = Var(9);
    pub const Y4: Var = Var(10);
    pub const H1: Var = Var(20);
    pub const H2: Var = Var(21);

    /// `t_i` for `i` in `1..=3`.
    pub fn t(i: usize) -> Var {
        assert!((1..=3).contains(&i), "t{i} is not in the universe");
        Var((i - 1) as u8)
    }

    /// `x_i` for `i` in `1..=4`.
    pub fn x(i: usize) -> Var {
        assert!((1..=4).contains(&i), "x{i} is not in the universe");
        Var((2 + i) as u8)
    }

    /// `y_i` for `i` in `1..=4`.
    pub fn y(i: usize) -> Var {
        assert!((1..=4).contains(&i), "y{i} is not in the universe");
        Var((6 + i) as u8)
    }

    /// `z_{i,j}` for `i, j` in `1..=3`.
    pub fn z(i: usize, j: usize) -> Var {
        assert!(
            (1..=3).contains(&i) && (1..=3).contains(&j),
            "z{i}{j} is not in the universe"
        );
        Var((11 + 3 * (i - 1) + (j - 1)) as u8)
    }

    /// `h_i` for `i` in `1..=2`.
    pub fn h(i: usize) -> Var {
        assert!((1..=2).contains(&i), "h{i} is not in the universe");
        Var((19 + i) as u8)
    }

    /// `u_i` for `i` in `1..=4`.
    pub fn u(i: usize) -> Var {
        assert!((1..=4).contains(&i), "u{i} is not in the universe");
        Var((21 + i) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < NVARS);
        Var(i as u8)
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        NAMES.iter().position(|n| *n == name).map(Var::from_index)
    }

    pub fn block(self) -> Block {
        match self.0 {
            0..=2 => Block::T,
            3..=6 => Block::X,
            7..=10 => Block::Y,
            11..=19 => Block::Z,
            20..=21 => Block::H,
            _ => Block::U,
        }
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS).map(Var::from_index)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of variables, used to name a variable block such as `{x̄, ȳ}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const ALL: VarSet = VarSet((1 << NVARS) - 1);
    pub const T: VarSet = VarSet(0b111);
    pub const T12: VarSet = VarSet(0b011);
    pub const X: VarSet = VarSet(0b1111 << 3);
    pub const Y: VarSet = VarSet(0b1111 << 7);
    pub const XY: VarSet = VarSet(0b1111_1111 << 3);

    pub fn of(vars: &[Var]) -> VarSet {
        vars.iter().fold(VarSet::EMPTY, |s, v| s.with(*v))
    }

    pub fn block(b: Block) -> VarSet {
        Var::all()
            .filter(|v| v.block() == b)
            .fold(VarSet::EMPTY, |s, v| s.with(v))
    }

    pub fn with(self, v: Var) -> VarSet {
        VarSet(self.0 | (1 << v.index()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn complement(self) -> VarSet {
        VarSet(!self.0 & VarSet::ALL.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::all().filter(move |v| self.contains(*v))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Unwraps a finite degree; panics on the zero-polynomial sentinel.
    pub fn expect_finite(self, what: &str) -> u32 {
        self.finite()
            .unwrap_or_else(|| panic!("{what}: degree of the zero polynomial"))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
