//! Scenario configuration: `key = value` lines, `#` comments, exact rationals only.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use calogero_core::coxeter::GroupLabel;
use calogero_core::scalars::{Cyc, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("invalid value for {key}: {msg}")]
    InvalidValue { key: String, msg: String },
    #[error("missing key {0:?}")]
    Missing(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scenario {
    BlStandard,
    BlOrbit,
    G2SixSpins,
    G2ThreeSpins,
    I2mTwoSpins,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::BlStandard,
        Scenario::BlOrbit,
        Scenario::G2SixSpins,
        Scenario::G2ThreeSpins,
        Scenario::I2mTwoSpins,
        Scenario::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::BlStandard => "bl_standard",
            Scenario::BlOrbit => "bl_orbit",
            Scenario::G2SixSpins => "g2_six_spins",
            Scenario::G2ThreeSpins => "g2_three_spins",
            Scenario::I2mTwoSpins => "i2m_two_spins",
            Scenario::Custom => "custom",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scenario::ALL.into_iter().find(|x| x.name() == s.trim()).ok_or_else(|| format!("unknown scenario {s:?}"))
    }
}

/// The local twist matrix Q.
#[derive(Clone, Debug, PartialEq)]
pub enum QSpec {
    /// diag(ζ^{c_1}, …, ζ^{c_N}) with ζ a primitive root of the twist order.
    Exponents(Vec<i64>),
    Matrix(Vec<Vec<Cyc>>),
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Exponents(e) => write!(f, "exp: {}", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
            QSpec::Matrix(rows) => write!(f, "matrix: {}", render_rows(rows)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Rank L of B_L.
    pub rank: usize,
    /// Dihedral order m of I₂(m).
    pub m: u32,
    /// Local spin dimension N.
    pub n: usize,
    pub k_values: Vec<(Rational, Rational)>,
    pub cutoff: usize,
    pub q: Option<QSpec>,
    /// Group of a custom orbit model.
    pub group: Option<GroupLabel>,
    pub base_point: Option<Vec<Cyc>>,
    pub orbit_order: Option<Vec<Vec<Cyc>>>,
    pub seed_point: usize,
    pub time_limit_secs: Option<u64>,
    pub max_terms: Option<usize>,
    pub report_path: Option<PathBuf>,
}

/// (0,0), (1,1), (1/2,−2), (−2,3), (3,1/2): the sample set {0, 1, 1/2, −2, 3} paired cyclically.
pub fn default_k_values() -> Vec<(Rational, Rational)> {
    ["0", "1", "1/2", "-2", "3"]
        .iter()
        .zip(["0", "1", "-2", "3", "1/2"])
        .map(|(a, b)| (a.parse().expect("rational"), b.parse().expect("rational")))
        .collect()
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        ScenarioConfig {
            scenario,
            rank: 2,
            m: 6,
            n: 2,
            k_values: default_k_values(),
            cutoff: 7,
            q: None,
            group: None,
            base_point: None,
            orbit_order: None,
            seed_point: 0,
            time_limit_secs: None,
            max_terms: None,
            report_path: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line: i + 1, msg: format!("expected key = value, got {line:?}") })?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let scenario = pairs
            .iter()
            .find(|(k, _)| k == "scenario")
            .ok_or_else(|| ConfigError::Missing("scenario".into()))?
            .1
            .parse()
            .map_err(|msg| ConfigError::InvalidValue { key: "scenario".into(), msg })?;
        let mut cfg = ScenarioConfig::new(scenario);
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::parse(&text)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |msg: String| ConfigError::InvalidValue { key: key.to_string(), msg };
        let int = |v: &str| v.trim().parse::<u64>().map_err(|e| bad(format!("{v:?}: {e}")));
        match key {
            "scenario" => self.scenario = value.parse().map_err(bad)?,
            "L" => self.rank = int(value)? as usize,
            "m" => self.m = int(value)? as u32,
            "N" => self.n = int(value)? as usize,
            "cutoff" => self.cutoff = int(value)? as usize,
            "seed_point" => self.seed_point = int(value)? as usize,
            "time_limit" => self.time_limit_secs = Some(int(value)?),
            "max_terms" => self.max_terms = Some(int(value)? as usize),
            "report" => self.report_path = Some(PathBuf::from(value.trim())),
            "k" => self.k_values = parse_k_values(value).map_err(bad)?,
            "Q" => self.q = Some(parse_q(value).map_err(bad)?),
            "group" => self.group = Some(parse_group(value).map_err(bad)?),
            "base_point" => self.base_point = Some(parse_vector(value).map_err(bad)?),
            "orbit_order" => self.orbit_order = Some(parse_rows(value).map_err(bad)?),
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: &str| Err(ConfigError::InvalidValue { key: key.into(), msg: msg.into() });
        if self.k_values.is_empty() {
            return bad("k", "at least one (k_s, k_l) pair is required");
        }
        if self.cutoff < 2 {
            return bad("cutoff", "must be at least 2");
        }
        if self.n == 0 {
            return bad("N", "must be positive");
        }
        match self.scenario {
            Scenario::BlStandard | Scenario::BlOrbit if self.rank < 2 => bad("L", "must be at least 2"),
            Scenario::I2mTwoSpins if self.m < 3 => bad("m", "must be at least 3"),
            Scenario::Custom if self.group.is_none() => Err(ConfigError::Missing("group".into())),
            Scenario::Custom if self.base_point.is_none() => Err(ConfigError::Missing("base_point".into())),
            _ => Ok(()),
        }
    }

    /// Canonical text of every setting that affects the run.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        out.insert("scenario".into(), self.scenario.to_string());
        out.insert("N".into(), self.n.to_string());
        out.insert("cutoff".into(), self.cutoff.to_string());
        out.insert("k".into(), render_k_values(&self.k_values));
        out.insert("seed_point".into(), self.seed_point.to_string());
        match self.scenario {
            Scenario::BlStandard | Scenario::BlOrbit => {
                out.insert("L".into(), self.rank.to_string());
            }
            Scenario::I2mTwoSpins => {
                out.insert("m".into(), self.m.to_string());
            }
            Scenario::Custom => {
                if let Some(g) = &self.group {
                    out.insert("group".into(), g.to_string());
                }
                if let Some(b) = &self.base_point {
                    out.insert("base_point".into(), render_vector(b));
                }
                if let Some(o) = &self.orbit_order {
                    out.insert("orbit_order".into(), render_rows(o));
                }
            }
            _ => {}
        }
        if let Some(q) = &self.q {
            out.insert("Q".into(), q.to_string());
        }
        out
    }
}

fn reject_floats(s: &str) -> Result<(), String> {
    if s.contains('.') {
        Err(format!("{s:?}: decimal numbers are not allowed, write p/q"))
    } else {
        Ok(())
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    reject_floats(s)?;
    s.trim().parse().map_err(|e| format!("{e}"))
}

/// `k_s, k_l; k_s, k_l; …`
pub fn parse_k_values(s: &str) -> Result<Vec<(Rational, Rational)>, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| match p.split(',').collect::<Vec<_>>()[..] {
            [a, b] => Ok((rational(a)?, rational(b)?)),
            [a] => {
                let k = rational(a)?;
                Ok((k.clone(), k))
            }
            _ => Err(format!("{p:?}: expected k_s, k_l")),
        })
        .collect()
}

pub fn render_k_values(k: &[(Rational, Rational)]) -> String {
    k.iter().map(|(a, b)| format!("{a},{b}")).collect::<Vec<_>>().join("; ")
}

fn parse_vector(s: &str) -> Result<Vec<Cyc>, String> {
    reject_floats(s)?;
    s.split(',').map(|x| x.trim().parse::<Cyc>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<Cyc>>, String> {
    s.split(';').filter(|r| !r.trim().is_empty()).map(parse_vector).collect()
}

fn render_vector(v: &[Cyc]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn render_rows(rows: &[Vec<Cyc>]) -> String {
    rows.iter().map(|r| render_vector(r)).collect::<Vec<_>>().join("; ")
}

/// `exp: c_1, …, c_N` or `matrix: row; row; …`.
fn parse_q(s: &str) -> Result<QSpec, String> {
    let (kind, body) = s.split_once(':').ok_or_else(|| "expected exp: … or matrix: …".to_string())?;
    match kind.trim() {
        "exp" => body
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(QSpec::Exponents),
        "matrix" => parse_rows(body).map(QSpec::Matrix),
        other => Err(format!("unknown Q form {other:?}")),
    }
}

/// `B3`, `A2`, `I2(5)`.
pub fn parse_group(s: &str) -> Result<GroupLabel, String> {
    let s = s.trim();
    let num = |t: &str| t.parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    if let Some(m) = s.strip_prefix("I2(").and_then(|t| t.strip_suffix(')')) {
        return Ok(GroupLabel::I2InR2(num(m)? as u32));
    }
    if let Some(l) = s.strip_prefix('B') {
        return Ok(GroupLabel::B(num(l)?));
    }
    if let Some(l) = s.strip_prefix('A') {
        return Ok(GroupLabel::A(num(l)? + 1));
    }
    Err(format!("unknown group {s:?}; use B<L>, A<L> or I2(<m>)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_file() {
        let cfg = ScenarioConfig::parse(
            "# standard model\nscenario = bl_standard\nL = 3\nN = 2\nk = 1,1; 1/2, -2\ncutoff = 5\nQ = exp: 0, 1\n",
        )
        .unwrap();
        assert_eq!(cfg.rank, 3);
        assert_eq!(cfg.k_values.len(), 2);
        assert_eq!(cfg.k_values[1].0, Rational::new(1, 2).unwrap());
        assert_eq!(cfg.q, Some(QSpec::Exponents(vec![0, 1])));
        assert_eq!(cfg.echo()["k"], "1,1; 1/2,-2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ScenarioConfig::parse("L = 2"), Err(ConfigError::Missing(_))));
        assert!(matches!(ScenarioConfig::parse("scenario = bl_orbit\nk = 0.5"), Err(ConfigError::InvalidValue { .. })));
        assert!(matches!(ScenarioConfig::parse("scenario = bl_orbit\ncutoff = 1"), Err(ConfigError::InvalidValue { .. })));
        assert!(matches!(ScenarioConfig::parse("scenario = bl_orbit\ncolour = red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(ScenarioConfig::parse("scenario = custom\ngroup = B2"), Err(ConfigError::Missing(_))));
        assert!(matches!(ScenarioConfig::parse("scenario bl_orbit"), Err(ConfigError::Syntax { line: 1, .. })));
    }

    #[test]
    fn groups() {
        assert_eq!(parse_group("B3"), Ok(GroupLabel::B(3)));
        assert_eq!(parse_group("A2"), Ok(GroupLabel::A(3)));
        assert_eq!(parse_group("I2(5)"), Ok(GroupLabel::I2InR2(5)));
        assert!(parse_group("E8").is_err());
    }

    proptest! {
        #[test]
        fn k_values_survive_echo(pairs in prop::collection::vec(((-9i64..9, 1i64..7), (-9i64..9, 1i64..7)), 1..5)) {
            let k: Vec<_> = pairs
                .iter()
                .map(|&((a, b), (c, d))| (Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap()))
                .collect();
            prop_assert_eq!(parse_k_values(&render_k_values(&k)).unwrap(), k);
        }
    }
}
