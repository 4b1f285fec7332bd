use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Lane masks for variables 0..6 inside one 64-bit word of a table.
pub const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Mask of the valid bits in the first word of an `n`-variable table.
pub fn word_mask(n: usize) -> u64 {
    if n >= 6 {
        !0
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// The function `{0,1}^n -> {0,1}` as 2^n bits; bit `idx` is the value on the
/// input whose variable `i` is bit `i` of `idx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    num_vars: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(num_vars: usize) -> Self {
        let words = if num_vars >= 6 {
            1usize << (num_vars - 6)
        } else {
            1
        };
        TruthTable {
            num_vars,
            words: vec![0; words],
        }
    }

    pub fn from_fn(num_vars: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut t = Self::zero(num_vars);
        for idx in 0..t.len() {
            if f(idx) {
                t.set(idx, true);
            }
        }
        t
    }

    /// Builds a table from raw words; bits past 2^n are cleared.
    pub fn from_words(num_vars: usize, mut words: Vec<u64>) -> Self {
        let expect = Self::zero(num_vars).words.len();
        words.resize(expect, 0);
        words[0] &= word_mask(num_vars);
        TruthTable { num_vars, words }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::from_fn(num_vars, |idx| idx >> i & 1 == 1)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        1 << self.num_vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    pub fn set(&mut self, idx: usize, bit: bool) {
        let w = &mut self.words[idx >> 6];
        if bit {
            *w |= 1 << (idx & 63);
        } else {
            *w &= !(1 << (idx & 63));
        }
    }

    pub fn eval(&self, input: &[bool]) -> bool {
        self.get(index_of(input))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            k if k == self.len() => Some(true),
            _ => None,
        }
    }

    /// The same function viewed over `num_vars >= self.num_vars()` variables.
    pub fn padded(&self, num_vars: usize) -> TruthTable {
        assert!(num_vars >= self.num_vars);
        let mask = self.len() - 1;
        TruthTable::from_fn(num_vars, |idx| self.get(idx & mask))
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |detail: String| Error::Malformed {
            what: "truth table",
            detail,
        };
        let mut tokens = text
            .lines()
            .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace());
        let head = tokens.next().ok_or_else(|| bad("empty input".into()))?;
        let n: usize = head
            .strip_prefix("n=")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| bad(format!("expected `n=<k>`, got `{head}`")))?;
        if n > 30 {
            return Err(bad(format!("{n} variables is too many")));
        }
        let bits: String = tokens.collect();
        if bits.len() != 1 << n {
            return Err(bad(format!(
                "expected {} bits, got {}",
                1usize << n,
                bits.len()
            )));
        }
        let mut t = TruthTable::zero(n);
        for (idx, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => t.set(idx, true),
                _ => return Err(bad(format!("unexpected character `{ch}`"))),
            }
        }
        Ok(t)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.num_vars)?;
        for idx in 0..self.len() {
            f.write_str(if self.get(idx) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Index of an input vector, variable `i` at bit `i`.
pub fn index_of(input: &[bool]) -> usize {
    input
        .iter()
        .enumerate()
        .map(|(i, &b)| (b as usize) << i)
        .sum()
}

pub fn input_of(idx: usize, num_vars: usize) -> Vec<bool> {
    (0..num_vars).map(|i| idx >> i & 1 == 1).collect()
}

/// Renders an input as 0/1 characters, variable 0 first.
pub fn format_input(input: &[bool]) -> String {
    input.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_input(text: &str) -> Result<Vec<bool>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Malformed {
                what: "input vector",
                detail: format!("unexpected character `{c}`"),
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t: TruthTable = "n=2\n0001".parse().unwrap();
        assert!(t.get(3) && !t.get(1));
        assert_eq!(t.to_string(), "n=2\n0001");
        assert!("n=2 001".parse::<TruthTable>().is_err());
        assert!("n=1 0x".parse::<TruthTable>().is_err());
        assert!("2 0001".parse::<TruthTable>().is_err());
        let commented: TruthTable = "# xor of two inputs\nn=2\n01 # low half\n10"
            .parse()
            .unwrap();
        assert_eq!(commented.to_string(), "n=2\n0110");
    }

    #[test]
    fn large_tables_use_words() {
        let t = TruthTable::var(8, 7);
        assert_eq!(t.words(), &[0, 0, !0, !0]);
        assert_eq!(t.count_ones(), 128);
        assert_eq!(TruthTable::var(3, 1).words(), &[0xCC]);
    }

    #[test]
    fn padding_replicates() {
        let t: TruthTable = "n=1 01".parse().unwrap();
        assert_eq!(t.padded(3), TruthTable::var(3, 0));
    }

    #[test]
    fn input_round_trip() {
        let a = parse_input("101").unwrap();
        assert_eq!(index_of(&a), 5);
        assert_eq!(input_of(5, 3), a);
        assert_eq!(format_input(&a), "101");
    }
}
