use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// Monomial `x1^i * x2^k * xj` naming a basis element.
///
/// At most one variable beyond `x2` may occur, and only linearly. Labels
/// order as: unit, powers of `x1`, then `x1^i * x2` by `i`, then `x3..xh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialLabel {
    pub x1: u32,
    pub x2: u32,
    /// Index `j >= 3` of the extra variable, if any.
    pub extra: Option<u32>,
}

impl MonomialLabel {
    pub const UNIT: MonomialLabel = MonomialLabel { x1: 0, x2: 0, extra: None };

    pub fn x1_pow(i: u32) -> Self {
        MonomialLabel { x1: i, x2: 0, extra: None }
    }

    pub fn x1_pow_x2(i: u32) -> Self {
        MonomialLabel { x1: i, x2: 1, extra: None }
    }

    pub fn extra(j: u32) -> Self {
        assert!(j >= 3, "extra variables start at x3");
        MonomialLabel { x1: 0, x2: 0, extra: Some(j) }
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    pub fn degree(&self) -> u32 {
        self.x1 + self.x2 + u32::from(self.extra.is_some())
    }

    fn sort_key(&self) -> (u32, u32, u32) {
        (self.extra.unwrap_or(0), self.x2, self.x1)
    }
}

impl Ord for MonomialLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for MonomialLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonomialLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |var: u32, exp: u32| match exp {
            0 => {}
            1 => factors.push(format!("x{var}")),
            e => factors.push(format!("x{var}^{e}")),
        };
        push(1, self.x1);
        push(2, self.x2);
        if let Some(j) = self.extra {
            push(j, 1);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

impl FromStr for MonomialLabel {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Label(s.to_string());
        let text = s.trim();
        if text == "1" {
            return Ok(Self::UNIT);
        }
        let mut label = Self::UNIT;
        let mut seen = [false; 3];
        for factor in text.split('*') {
            let factor = factor.trim();
            let rest = factor.strip_prefix('x').ok_or_else(bad)?;
            let (var, exp) = match rest.split_once('^') {
                Some((v, e)) => (v, Some(e)),
                None => (rest, None),
            };
            let number = |t: &str| -> Result<u32, ParseError> {
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                t.parse::<u32>().map_err(|_| bad())
            };
            let var = number(var)?;
            let exp = exp.map(number).transpose()?.unwrap_or(1);
            if var == 0 || exp == 0 {
                return Err(bad());
            }
            let slot = (var.min(3) - 1) as usize;
            if seen[slot] {
                return Err(bad());
            }
            seen[slot] = true;
            match var {
                1 => label.x1 = exp,
                2 => label.x2 = exp,
                j if exp == 1 => label.extra = Some(j),
                _ => return Err(bad()),
            }
        }
        Ok(label)
    }
}
