//! Sequence specs such as `A_r_k21 k=4 r=1` or `C_layered pat=[1,4]`.

use std::collections::BTreeMap;
use std::fmt;

use inv231::enumeration::{
    count_a1_layered, count_a_r_k21, count_c_k21, count_c_r_k21, count_one231, count_one_occ_1k_l,
    count_s_132_213_beta, gf_a0_layered, gf_a1_layered, gf_a_r_k21, gf_a_xy_k21, gf_c1_layered,
    gf_c_k21, gf_c_layered, gf_c_r_k21, gf_c_xy_k21,
};
use inv231::{
    count_bounded_tilings, decompose_layered, fib_k, geom_denominator, BiSeries, BigUint,
    Composition, Error, LayeredPattern, Permutation, UniSeries,
};

/// Parses a pattern given either as a composition `[1,4]` or as the digits
/// of a layered permutation `15432`.
pub fn parse_pattern(text: &str) -> Result<Composition, Error> {
    let t = text.trim();
    if t.starts_with('[') {
        return t.parse();
    }
    let p: Permutation = t.parse()?;
    decompose_layered(&p)
        .ok_or_else(|| Error::InvalidComposition(format!("{p} is not a layered permutation")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqSpec {
    Fib { k: usize },
    Tilings { k: usize },
    Beta { a: usize, b: usize, c: usize },
    One231,
    AXyK21 { k: usize },
    ARK21 { k: usize, r: usize },
    A0Layered { pat: Composition },
    A1Layered { pat: Composition },
    OneOcc1kL { k: usize, l: usize },
    CK21 { k: usize },
    CLayered { pat: Composition },
    CXyK21 { k: usize },
    CRK21 { k: usize, r: usize },
    C1Layered { pat: Composition },
}

/// Largest numeric parameter or pattern size a spec may carry.
pub const MAX_PARAM: usize = 1000;

/// Names accepted by [`SeqSpec::parse`] with their parameters, for help text.
pub const SPEC_NAMES: &[(&str, &str)] = &[
    ("fib", "k"),
    ("tilings", "k"),
    ("beta", "a b c"),
    ("one231", ""),
    ("A_xy_k21", "k"),
    ("A_r_k21", "k r"),
    ("A0_layered", "pat"),
    ("A1_layered", "pat"),
    ("one_occ_1k_l", "k l"),
    ("C_k21", "k"),
    ("C_layered", "pat"),
    ("C_xy_k21", "k"),
    ("C_r_k21", "k r"),
    ("C1_layered", "pat"),
];

pub fn spec_help() -> String {
    SPEC_NAMES
        .iter()
        .map(|(name, params)| {
            let ps: Vec<String> = params
                .split_whitespace()
                .map(|p| format!("{p}=.."))
                .collect();
            if ps.is_empty() {
                name.to_string()
            } else {
                format!("{name} {}", ps.join(" "))
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

struct Params {
    name: String,
    values: BTreeMap<String, String>,
}

impl Params {
    fn usize(&mut self, key: &str) -> Result<usize, Error> {
        let raw = self.take(key)?;
        let v: usize = raw.parse().map_err(|_| {
            Error::Parse(format!(
                "{}: {key}={raw:?} is not a non-negative integer",
                self.name
            ))
        })?;
        self.bounded(key, v)
    }

    fn pattern(&mut self, key: &str) -> Result<Composition, Error> {
        let raw = self.take(key)?;
        let c = parse_pattern(&raw)?;
        self.bounded(key, c.total())?;
        Ok(c)
    }

    fn bounded(&self, key: &str, v: usize) -> Result<usize, Error> {
        if v > MAX_PARAM {
            return Err(Error::Parse(format!(
                "{}: {key} exceeds {MAX_PARAM}",
                self.name
            )));
        }
        Ok(v)
    }

    fn take(&mut self, key: &str) -> Result<String, Error> {
        self.values
            .remove(key)
            .ok_or_else(|| Error::Parse(format!("{} needs {key}=", self.name)))
    }

    fn done(self) -> Result<(), Error> {
        match self.values.keys().next() {
            Some(k) => Err(Error::Parse(format!("{} does not take {k}=", self.name))),
            None => Ok(()),
        }
    }
}

impl SeqSpec {
    /// Parses whitespace-separated `name key=value ...` text. Names are
    /// matched case-insensitively.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut words = text.split_whitespace();
        let name = words
            .next()
            .ok_or_else(|| Error::Parse("empty sequence spec".into()))?;
        let canonical = SPEC_NAMES
            .iter()
            .map(|(n, _)| *n)
            .find(|n| n.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Parse(format!("unknown sequence {name:?}")))?;
        let mut values = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {w:?}")))?;
            if values
                .insert(k.to_ascii_lowercase(), v.to_string())
                .is_some()
            {
                return Err(Error::Parse(format!("{k}= given twice")));
            }
        }
        let mut p = Params {
            name: canonical.to_string(),
            values,
        };
        let spec = match canonical {
            "fib" => SeqSpec::Fib { k: p.usize("k")? },
            "tilings" => SeqSpec::Tilings { k: p.usize("k")? },
            "beta" => SeqSpec::Beta {
                a: p.usize("a")?,
                b: p.usize("b")?,
                c: p.usize("c")?,
            },
            "one231" => SeqSpec::One231,
            "A_xy_k21" => SeqSpec::AXyK21 { k: p.usize("k")? },
            "A_r_k21" => SeqSpec::ARK21 {
                k: p.usize("k")?,
                r: p.usize("r")?,
            },
            "A0_layered" => SeqSpec::A0Layered {
                pat: p.pattern("pat")?,
            },
            "A1_layered" => SeqSpec::A1Layered {
                pat: p.pattern("pat")?,
            },
            "one_occ_1k_l" => SeqSpec::OneOcc1kL {
                k: p.usize("k")?,
                l: p.usize("l")?,
            },
            "C_k21" => SeqSpec::CK21 { k: p.usize("k")? },
            "C_layered" => SeqSpec::CLayered {
                pat: p.pattern("pat")?,
            },
            "C_xy_k21" => SeqSpec::CXyK21 { k: p.usize("k")? },
            "C_r_k21" => SeqSpec::CRK21 {
                k: p.usize("k")?,
                r: p.usize("r")?,
            },
            "C1_layered" => SeqSpec::C1Layered {
                pat: p.pattern("pat")?,
            },
            _ => unreachable!("every listed name has a parser"),
        };
        p.done()?;
        Ok(spec)
    }

    pub fn is_bivariate(&self) -> bool {
        matches!(self, SeqSpec::AXyK21 { .. } | SeqSpec::CXyK21 { .. })
    }

    /// Values for `n = 0..=n_max`.
    pub fn table(&self, n_max: usize) -> Result<Vec<BigUint>, Error> {
        let direct = |f: &dyn Fn(usize) -> Result<BigUint, Error>| (0..=n_max).map(f).collect();
        match self {
            SeqSpec::Fib { k } => direct(&|n| Ok(fib_k(*k, n as i64))),
            SeqSpec::Tilings { k } => direct(&|n| Ok(count_bounded_tilings(n, *k))),
            SeqSpec::Beta { a, b, c } => direct(&|n| count_s_132_213_beta(n, *a, *b, *c)),
            SeqSpec::One231 => direct(&|n| Ok(count_one231(n))),
            SeqSpec::ARK21 { k, r } => direct(&|n| count_a_r_k21(n, *k, *r)),
            SeqSpec::A1Layered { pat } => {
                let lp = LayeredPattern::new(pat.clone())?;
                direct(&|n| Ok(count_a1_layered(n, &lp)))
            }
            SeqSpec::OneOcc1kL { k, l } => direct(&|n| count_one_occ_1k_l(n, *k, *l)),
            SeqSpec::CK21 { k } => direct(&|n| count_c_k21(n, *k)),
            SeqSpec::CRK21 { k, r } => direct(&|n| count_c_r_k21(n, *k, *r)),
            SeqSpec::A0Layered { .. } | SeqSpec::CLayered { .. } | SeqSpec::C1Layered { .. } => {
                let s = self.univariate(n_max)?;
                s.as_counts()
                    .ok_or_else(|| Error::Domain(format!("{self} produced a negative coefficient")))
            }
            SeqSpec::AXyK21 { .. } | SeqSpec::CXyK21 { .. } => Err(Error::Precondition(format!(
                "{self} is bivariate; dump it with `gf`"
            ))),
        }
    }

    /// The univariate generating function truncated at `trunc`.
    pub fn univariate(&self, trunc: usize) -> Result<UniSeries, Error> {
        let recip = |k: usize| geom_denominator(k, trunc).reciprocal();
        Ok(match self {
            SeqSpec::Fib { k } => recip(*k)?.shift(1),
            SeqSpec::Tilings { k } => recip(*k)?,
            SeqSpec::Beta { .. } => {
                return Err(Error::Precondition(format!(
                    "{self} has no generating function here; use `table`"
                )))
            }
            SeqSpec::One231 => {
                // two runs of blue tiles of any length around one red tile
                let ratio = &UniSeries::from_i64s(&[1, -1], trunc)
                    * &UniSeries::from_i64s(&[1, -2], trunc).reciprocal()?;
                (&ratio * &ratio).shift(4)
            }
            SeqSpec::ARK21 { k, r } => gf_a_r_k21(*k, *r, trunc)?,
            SeqSpec::A0Layered { pat } => gf_a0_layered(pat, trunc),
            SeqSpec::A1Layered { pat } => gf_a1_layered(&LayeredPattern::new(pat.clone())?, trunc),
            SeqSpec::OneOcc1kL { k, l } => {
                let pat = Composition::ones_then(*k, *l)?;
                gf_a1_layered(&LayeredPattern::new(pat)?, trunc)
            }
            SeqSpec::CK21 { k } => gf_c_k21(*k, trunc)?,
            SeqSpec::CLayered { pat } => gf_c_layered(pat, trunc),
            SeqSpec::CRK21 { k, r } => gf_c_r_k21(*k, *r, trunc)?,
            SeqSpec::C1Layered { pat } => gf_c1_layered(pat, trunc)?,
            SeqSpec::AXyK21 { k } => gf_a_xy_k21(*k, trunc)?.at_y_one(),
            SeqSpec::CXyK21 { k } => gf_c_xy_k21(*k, trunc)?.at_y_one(),
        })
    }

    pub fn bivariate(&self, trunc: usize) -> Result<BiSeries, Error> {
        match self {
            SeqSpec::AXyK21 { k } => gf_a_xy_k21(*k, trunc),
            SeqSpec::CXyK21 { k } => gf_c_xy_k21(*k, trunc),
            _ => Ok(BiSeries::from_uni(&self.univariate(trunc)?)),
        }
    }
}

impl fmt::Display for SeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqSpec::Fib { k } => write!(f, "fib k={k}"),
            SeqSpec::Tilings { k } => write!(f, "tilings k={k}"),
            SeqSpec::Beta { a, b, c } => write!(f, "beta a={a} b={b} c={c}"),
            SeqSpec::One231 => write!(f, "one231"),
            SeqSpec::AXyK21 { k } => write!(f, "A_xy_k21 k={k}"),
            SeqSpec::ARK21 { k, r } => write!(f, "A_r_k21 k={k} r={r}"),
            SeqSpec::A0Layered { pat } => write!(f, "A0_layered pat={pat}"),
            SeqSpec::A1Layered { pat } => write!(f, "A1_layered pat={pat}"),
            SeqSpec::OneOcc1kL { k, l } => write!(f, "one_occ_1k_l k={k} l={l}"),
            SeqSpec::CK21 { k } => write!(f, "C_k21 k={k}"),
            SeqSpec::CLayered { pat } => write!(f, "C_layered pat={pat}"),
            SeqSpec::CXyK21 { k } => write!(f, "C_xy_k21 k={k}"),
            SeqSpec::CRK21 { k, r } => write!(f, "C_r_k21 k={k} r={r}"),
            SeqSpec::C1Layered { pat } => write!(f, "C1_layered pat={pat}"),
        }
    }
}
