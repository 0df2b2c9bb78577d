//! The scenario catalog.

use crate::config::{Scenario, ScenarioConfig};

pub struct Entry {
    pub scenario: Scenario,
    pub summary: &'static str,
    pub symmetry: &'static str,
    /// Configuration used when the scenario is named without a file.
    pub default_config: &'static str,
}

pub const CATALOG: [Entry; 6] = [
    Entry {
        scenario: Scenario::BlStandard,
        summary: "B_L on L particles, R_{t_i} = P_{i,i+1}, R_r = Q_L, B(u) = ½(T(u) − Q_a T(−u) Q_a)",
        symmetry: "twisted half-loop, order 2",
        default_config: "scenario = bl_standard\nL = 2\nN = 2\ncutoff = 7\n",
    },
    Entry {
        scenario: Scenario::BlOrbit,
        summary: "B_L on the orbit ±e_k, two spins per particle, T(u) = Σ_k P_ak/(u − d_k) + P_ak̄/(u + d_k)",
        symmetry: "half-loop",
        default_config: "scenario = bl_orbit\nL = 2\nN = 2\ncutoff = 7\n",
    },
    Entry {
        scenario: Scenario::G2SixSpins,
        summary: "I2(6) on R³, orbit of e_1 with M = 6 sites, three particles carrying six spins",
        symmetry: "half-loop",
        default_config: "scenario = g2_six_spins\nN = 2\ncutoff = 7\n",
    },
    Entry {
        scenario: Scenario::G2ThreeSpins,
        summary: "I2(6) on R³, three spins, B̂(u) = T(u) − Q_a T(−u + D) Q_a with D = (2/3)(d_1 + d_2 + d_3)",
        symmetry: "shifted twisted half-loop, order 2",
        default_config: "scenario = g2_three_spins\nN = 2\ncutoff = 7\n",
    },
    Entry {
        scenario: Scenario::I2mTwoSpins,
        summary: "I2(m) on R² in complex coordinates, two spins, spectral shift d d̄",
        symmetry: "shifted twisted half-loop, order m",
        default_config: "scenario = i2m_two_spins\nm = 6\nN = 2\ncutoff = 7\n",
    },
    Entry {
        scenario: Scenario::Custom,
        summary: "any supported group on the orbit of a base point (group = B<L> | A<L> | I2(<m>))",
        symmetry: "half-loop",
        default_config: "scenario = custom\ngroup = B2\nbase_point = 1, 1\nN = 2\ncutoff = 5\n",
    },
];

pub fn entry(s: Scenario) -> &'static Entry {
    CATALOG.iter().find(|e| e.scenario == s).expect("every scenario is catalogued")
}

pub fn default_config(s: Scenario) -> ScenarioConfig {
    ScenarioConfig::parse(entry(s).default_config).expect("catalog configs parse")
}

pub fn list_scenarios() -> String {
    let mut out = String::new();
    for e in &CATALOG {
        out.push_str(&format!("{:<16} {}\n{:<16} symmetry: {}\n", e.scenario.name(), e.summary, "", e.symmetry));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_and_list() {
        for e in &CATALOG {
            assert_eq!(default_config(e.scenario).scenario, e.scenario);
        }
        let text = list_scenarios();
        assert_eq!(text.lines().count(), 2 * CATALOG.len());
        assert!(text.contains("M = 6"));
        assert!(text.contains("D = (2/3)(d_1 + d_2 + d_3)"));
    }
}
