use std::fmt;

/// One tensor factor of a Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn from_xz(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn has_x(self) -> bool {
        matches!(self, Letter::X | Letter::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, Letter::Z | Letter::Y)
    }

    pub fn is_identity(self) -> bool {
        self == Letter::I
    }

    /// `self · other = i^k · c`, returned as `(Phase(k), c)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Letter) -> (Phase, Letter) {
        use Letter::*;
        let c = Letter::from_xz(self.has_x() ^ other.has_x(), self.has_z() ^ other.has_z());
        let k = match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (Y, X) | (Z, Y) | (X, Z) => 3,
            _ => 0,
        };
        (Phase(k), c)
    }

    pub fn commutes_with(self, other: Letter) -> bool {
        self == Letter::I || other == Letter::I || self == other
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A power of `i`, stored mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(pub u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn new(k: u8) -> Phase {
        Phase(k & 3)
    }

    pub fn exponent(self) -> u8 {
        self.0 & 3
    }

    pub fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn conj(self) -> Phase {
        Phase::new(4 - self.exponent())
    }

    /// The phase as `(re, im)`.
    pub fn to_complex_parts(self) -> (f64, f64) {
        match self.exponent() {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::new(self.0.wrapping_add(rhs.0))
    }
}

impl std::ops::MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.exponent() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}
