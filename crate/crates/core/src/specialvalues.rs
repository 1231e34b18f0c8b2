//! The arithmetic ingredients of the component-count formula: the second
//! generalized Bernoulli number `B_{2,χ}` of a real quadratic character and
//! class numbers of imaginary quadratic fields.
//!
//! Each quantity has two independent routes:
//!
//! * `B_{2,χ}`: the definitional sum `f · Σ χ(a) B₂(a/f)` with
//!   `B₂(x) = x² − x + 1/6`, and the even-character collapse
//!   `(1/f) · Σ χ(a) a²`.
//! * `h(D)`: counting reduced primitive forms of discriminant `D`, and the
//!   finite Dirichlet sum `Σ_{0<r<|D|/2} χ_D(r) / (2 − χ_D(2))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use thiserror::Error;

use crate::arithmetic::{
    fundamental_discriminant, is_fundamental_discriminant, ArithmeticError, QuadraticCharacter,
    Rational,
};

#[derive(Debug, Error)]
pub enum SpecialValueError {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("B_2 is not defined here for the trivial character")]
    TrivialCharacter,
    #[error("character of discriminant {0} is odd")]
    OddCharacter(i64),
    #[error("discriminant {0} must be negative and fundamental")]
    BadDiscriminant(i64),
    #[error("the Dirichlet-sum route only covers D < -4 (got {0})")]
    AnalyticUnsupported(i64),
    #[error("character sum {sum} is not divisible by {divisor} for D = {discriminant}")]
    NonIntegralClassNumber {
        discriminant: i64,
        sum: i64,
        divisor: i64,
    },
    #[error("cache file {path}: {source}")]
    CacheIo { path: String, source: io::Error },
    #[error("cache file {path} is malformed: {reason}")]
    CacheFormat { path: String, reason: String },
    #[error("cache disagreement for D = {discriminant}: {left} vs {right}")]
    CacheConflict {
        discriminant: i64,
        left: u64,
        right: u64,
    },
}

fn require_nontrivial(chi: &QuadraticCharacter) -> Result<i128, SpecialValueError> {
    if chi.is_trivial() {
        return Err(SpecialValueError::TrivialCharacter);
    }
    Ok(chi.conductor() as i128)
}

/// `B_{2,χ} = f · Σ_{a=1}^{f} χ(a) B₂(a/f)`.
///
/// Each term is brought over the common denominator `6f²`, so
/// `f · B₂(a/f) = (6a² − 6af + f²) / (6f)` and the sum is taken in integers.
pub fn bernoulli_b2_definitional(chi: &QuadraticCharacter) -> Result<Rational, SpecialValueError> {
    let f = require_nontrivial(chi)?;
    let mut numer: i128 = 0;
    for a in 1..=f {
        let c = chi.eval(a as i64) as i128;
        if c != 0 {
            numer += c * (6 * a * a - 6 * a * f + f * f);
        }
    }
    Ok(Rational::new(BigInt::from(numer), BigInt::from(6 * f)))
}

/// `B_{2,χ} = (1/f) · Σ_{a=1}^{f} χ(a) a²`, valid for even nontrivial `χ`
/// where the linear and constant parts of `B₂` cancel.
pub fn bernoulli_b2_even(chi: &QuadraticCharacter) -> Result<Rational, SpecialValueError> {
    let f = require_nontrivial(chi)?;
    if !chi.is_even() {
        return Err(SpecialValueError::OddCharacter(chi.discriminant()));
    }
    let numer: i128 = (1..=f).map(|a| chi.eval(a as i64) as i128 * a * a).sum();
    Ok(Rational::new(BigInt::from(numer), BigInt::from(f)))
}

/// A positive definite binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let Self { a, b, c } = *self;
        if !(b.abs() <= a && a <= c) {
            return false;
        }
        !(b < 0 && (b.abs() == a || a == c))
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn require_negative_fundamental(d: i64) -> Result<(), SpecialValueError> {
    if d < 0 && is_fundamental_discriminant(d) {
        Ok(())
    } else {
        Err(SpecialValueError::BadDiscriminant(d))
    }
}

/// One reduced primitive form per class of discriminant `d`, ordered by
/// `(a, |b|, b)` with positive `b` first.
pub fn reduced_forms(d: i64) -> Result<Vec<BinaryQuadraticForm>, SpecialValueError> {
    require_negative_fundamental(d)?;
    let abs_d = d.unsigned_abs() as i64;
    let parity = abs_d & 1;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= abs_d {
        // |b| takes the parity of D; try +b before -b.
        let mut b_abs = parity;
        while b_abs <= a {
            let signs: &[i64] = if b_abs == 0 { &[0] } else { &[b_abs, -b_abs] };
            for &b in signs {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let form = BinaryQuadraticForm::new(a, b, num / (4 * a));
                if form.is_reduced() && form.is_primitive() {
                    forms.push(form);
                }
            }
            b_abs += 2;
        }
        a += 1;
    }
    Ok(forms)
}

/// `h(d)` as the number of reduced primitive forms.
pub fn class_number_forms(d: i64) -> Result<u64, SpecialValueError> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// `h(d) = Σ_{0<r<|d|/2} χ_d(r) / (2 − χ_d(2))` for fundamental `d < −4`.
///
/// A nonzero remainder means an arithmetic bug somewhere and is reported,
/// never rounded away.
pub fn class_number_analytic(d: i64) -> Result<u64, SpecialValueError> {
    require_negative_fundamental(d)?;
    if d >= -4 {
        return Err(SpecialValueError::AnalyticUnsupported(d));
    }
    let chi = QuadraticCharacter::new(d)?;
    let abs_d = d.unsigned_abs() as i64;
    let sum: i64 = (1..)
        .take_while(|&r| 2 * r < abs_d)
        .map(|r| chi.eval(r) as i64)
        .sum();
    let divisor = 2 - chi.eval(2) as i64;
    if sum <= 0 || sum % divisor != 0 {
        return Err(SpecialValueError::NonIntegralClassNumber {
            discriminant: d,
            sum,
            divisor,
        });
    }
    Ok((sum / divisor) as u64)
}

/// Thread-safe map from negative fundamental discriminants to class numbers.
///
/// Readers see either a complete entry or none. Inserting a value that is
/// already present is a no-op, so concurrent writers computing the same
/// entry are harmless.
#[derive(Debug, Default)]
pub struct ClassNumberCache {
    entries: RwLock<HashMap<i64, u64>>,
    dirty: AtomicBool,
}

impl ClassNumberCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads a cache file; a missing file yields an empty cache.
    pub fn load(path: &Path) -> Result<Self, SpecialValueError> {
        let cache = Self::new();
        let entries = read_cache_file(path)?;
        *cache.entries.write().expect("cache lock poisoned") = entries.into_iter().collect();
        Ok(cache)
    }

    pub fn get(&self, d: i64) -> Option<u64> {
        self.entries
            .read()
            .expect("cache lock poisoned")
            .get(&d)
            .copied()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True once an entry has been added since construction or the last save.
    pub fn is_dirty(&self) -> bool {
        self.dirty.load(Ordering::Acquire)
    }

    fn insert(&self, d: i64, h: u64) {
        let mut map = self.entries.write().expect("cache lock poisoned");
        if map.insert(d, h).is_none() {
            self.dirty.store(true, Ordering::Release);
        }
    }

    /// `h(d)` from the cache, computing and storing it on a miss.
    pub fn class_number(&self, d: i64) -> Result<u64, SpecialValueError> {
        if let Some(h) = self.get(d) {
            return Ok(h);
        }
        let h = class_number_forms(d)?;
        self.insert(d, h);
        Ok(h)
    }

    /// Recomputes every entry by form counting.
    pub fn verify(&self) -> Result<(), SpecialValueError> {
        let snapshot = self.snapshot();
        for (d, h) in snapshot {
            let fresh = class_number_forms(d)?;
            if fresh != h {
                return Err(SpecialValueError::CacheConflict {
                    discriminant: d,
                    left: h,
                    right: fresh,
                });
            }
        }
        Ok(())
    }

    pub fn snapshot(&self) -> BTreeMap<i64, u64> {
        self.entries
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|(&d, &h)| (d, h))
            .collect()
    }

    /// Merges with whatever is on disk at `path`, then writes the union.
    pub fn save(&self, path: &Path) -> Result<(), SpecialValueError> {
        let mut merged = read_cache_file(path)?;
        for (d, h) in self.snapshot() {
            match merged.get(&d) {
                Some(&other) if other != h => {
                    return Err(SpecialValueError::CacheConflict {
                        discriminant: d,
                        left: h,
                        right: other,
                    })
                }
                _ => {
                    merged.insert(d, h);
                }
            }
        }
        let doc: BTreeMap<String, u64> = merged.iter().map(|(d, h)| (d.to_string(), *h)).collect();
        let text = serde_json::to_string_pretty(&doc).expect("string map serializes");
        let io_err = |source| SpecialValueError::CacheIo {
            path: path.display().to_string(),
            source,
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text + "\n").map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)?;
        self.dirty.store(false, Ordering::Release);
        Ok(())
    }
}

fn read_cache_file(path: &Path) -> Result<BTreeMap<i64, u64>, SpecialValueError> {
    let shown = || path.display().to_string();
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(source) => {
            return Err(SpecialValueError::CacheIo {
                path: shown(),
                source,
            })
        }
    };
    let raw: BTreeMap<String, u64> =
        serde_json::from_str(&text).map_err(|e| SpecialValueError::CacheFormat {
            path: shown(),
            reason: e.to_string(),
        })?;
    let mut out = BTreeMap::new();
    for (key, h) in raw {
        let d: i64 = key.parse().map_err(|_| SpecialValueError::CacheFormat {
            path: shown(),
            reason: format!("key {key:?} is not an integer"),
        })?;
        if d >= 0 || !is_fundamental_discriminant(d) || h == 0 {
            return Err(SpecialValueError::CacheFormat {
                path: shown(),
                reason: format!("entry {key} -> {h} is not a valid class number"),
            });
        }
        out.insert(d, h);
    }
    Ok(out)
}

/// Class number of `Q(√−m)` for squarefree `m ≥ 1`.
pub fn class_number_field(m: u64, cache: &ClassNumberCache) -> Result<u64, SpecialValueError> {
    let m = i64::try_from(m).map_err(|_| ArithmeticError::OutOfRange(m))?;
    if m < 1 {
        return Err(ArithmeticError::Degenerate(-m).into());
    }
    let d = fundamental_discriminant(-m)?;
    cache.class_number(d)
}
