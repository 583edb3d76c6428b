use serde::Serialize;

use crate::geometry::params::ParamsJson;
use crate::geometry::PointJson;

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// `sample <i>` (replayable from the seed) or `corner <j>`.
    pub origin: String,
    pub point: PointJson,
    pub display: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub statement: String,
    /// False for set-dependent properties in a run without a set.
    pub applicable: bool,
    /// Points on which the hypothesis of the property held.
    pub tested: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub set: Option<String>,
    pub params: ParamsJson,
    pub seed: u64,
    pub samples: usize,
    pub corners: usize,
    pub grid_denominator: i64,
    pub properties: Vec<PropertyResult>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "set {}: {} samples (seed {}), {} corner points, eps={} gamma={} delta={} delta'={}\n",
            self.set.as_deref().unwrap_or("(none)"),
            self.samples,
            self.seed,
            self.corners,
            self.params.eps,
            self.params.gamma,
            self.params.delta,
            self.params.delta_prime
        );
        for p in &self.properties {
            let status = match (p.applicable, p.passed) {
                (false, _) => "SKIP",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            out.push_str(&format!("{status} {:<34} tested {:>5}", p.name, p.tested));
            if let Some(c) = &p.counterexample {
                out.push_str(&format!(
                    ", {} failures; first at {} x={}: {}",
                    p.failures, c.origin, c.display, c.detail
                ));
            }
            out.push('\n');
        }
        out.push_str(if self.all_passed() {
            "all properties pass\n"
        } else {
            "some properties FAIL\n"
        });
        out
    }
}
