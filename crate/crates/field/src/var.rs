use std::fmt;

/// A named indeterminate. The numeric index doubles as the variable's rank in
/// the monomial order: lower index means more significant (`s > t > r > ...`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

const NAMES: [&str; 19] = [
    "s", "t", "r", "w1", "w2", "w3", "w4", "a1", "a2", "a3", "u", "c0", "c1", "c2", "c3", "c4",
    "c5", "c6", "c7",
];

impl Var {
    pub const S: Var = Var(0);
    pub const T: Var = Var(1);
    pub const R: Var = Var(2);
    /// Homogeneous coordinates of P^3.
    pub const W: [Var; 4] = [Var(3), Var(4), Var(5), Var(6)];
    /// Formal quadric coefficients.
    pub const A: [Var; 3] = [Var(7), Var(8), Var(9)];
    /// Line parameter.
    pub const U: Var = Var(10);

    pub const COUNT: usize = NAMES.len();

    /// Free scale symbol number `k` (`c0` .. `c7`).
    pub fn scale(k: usize) -> Var {
        assert!(k < 8, "scale symbol index out of range");
        Var(11 + k as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        (i < NAMES.len()).then_some(Var(i as u8))
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        NAMES.iter().position(|n| *n == name).map(|i| Var(i as u8))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
