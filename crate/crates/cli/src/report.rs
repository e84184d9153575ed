//! Report types and their two renderings: canonical JSON and a stable
//! text form with scalars printed to 9 significant digits.

use serde::Serialize;

use tropica::laws::LawReport;
use tropica::semifield::Semifield;
use tropica::spectral::{EigenSolution, OrbitReport, SpectrumReport};

/// 9 significant digits, trailing zeros trimmed by the shortest rendering.
pub fn sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - mag);
    ((v * scale).round() / scale).to_string()
}

pub fn scalar_text<K: Semifield>(k: K) -> String {
    match k.value() {
        Some(v) => sig9(v),
        None => "bottom".to_string(),
    }
}

fn indices_text(idx: impl IntoIterator<Item = usize>) -> String {
    let cells: Vec<String> = idx.into_iter().map(|i| i.to_string()).collect();
    format!("[{}]", cells.join(", "))
}

#[derive(Serialize)]
pub struct EigenDoc<K> {
    pub lambda: K,
    pub eigenvector: Vec<K>,
    pub critical_nodes: Vec<usize>,
    pub residual: f64,
}

impl<K: Semifield> EigenDoc<K> {
    pub fn new(sol: &EigenSolution<K>) -> Self {
        EigenDoc {
            lambda: sol.lambda,
            eigenvector: sol.eigenvector.entries().to_vec(),
            critical_nodes: sol.critical_nodes.iter().copied().collect(),
            residual: sol.residual,
        }
    }

    pub fn text(&self) -> String {
        format!(
            "lambda: {}\neigenvector: {}\ncritical nodes: {}\nresidual: {}\n",
            scalar_text(self.lambda),
            scalars_text(&self.eigenvector),
            indices_text(self.critical_nodes.iter().copied()),
            sig9(self.residual),
        )
    }
}

fn scalars_text<K: Semifield>(entries: &[K]) -> String {
    let cells: Vec<String> = entries.iter().map(|&e| scalar_text(e)).collect();
    format!("[{}]", cells.join(", "))
}

#[derive(Serialize)]
pub struct SpectrumEntryDoc<K> {
    pub lambda: K,
    pub eigenvector: Vec<K>,
    pub support: Vec<usize>,
    pub archimedean: bool,
}

#[derive(Serialize)]
pub struct SpectrumDoc<K> {
    pub method: String,
    pub eigenvalues: Vec<SpectrumEntryDoc<K>>,
}

impl<K: Semifield> SpectrumDoc<K> {
    pub fn new(report: &SpectrumReport<K>) -> Self {
        SpectrumDoc {
            method: report.method.to_string(),
            eigenvalues: report
                .eigenvalues
                .iter()
                .map(|e| SpectrumEntryDoc {
                    lambda: e.lambda,
                    eigenvector: e.witness.entries().to_vec(),
                    support: e.support.iter().copied().collect(),
                    archimedean: e.archimedean,
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "method: {}\neigenvalues: {}\n",
            self.method,
            self.eigenvalues.len()
        );
        for e in &self.eigenvalues {
            out.push_str(&format!(
                "  lambda: {}  support: {}  archimedean: {}  witness: {}\n",
                scalar_text(e.lambda),
                indices_text(e.support.iter().copied()),
                if e.archimedean { "yes" } else { "no" },
                scalars_text(&e.eigenvector),
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct LawDoc {
    pub name: String,
    pub samples: u32,
    pub failures: u32,
    pub counterexample: Option<String>,
}

#[derive(Serialize)]
pub struct SuiteDoc {
    pub name: String,
    pub laws: Vec<LawDoc>,
}

#[derive(Serialize)]
pub struct AxiomsDoc {
    pub semifield: String,
    pub seed: u64,
    pub samples: u32,
    pub passed: bool,
    pub suites: Vec<SuiteDoc>,
}

impl AxiomsDoc {
    pub fn new(semifield: &str, seed: u64, samples: u32, reports: Vec<(&str, LawReport)>) -> Self {
        let passed = reports.iter().all(|(_, r)| r.passed());
        AxiomsDoc {
            semifield: semifield.to_string(),
            seed,
            samples,
            passed,
            suites: reports
                .into_iter()
                .map(|(name, r)| SuiteDoc {
                    name: name.to_string(),
                    laws: r
                        .outcomes
                        .into_iter()
                        .map(|o| LawDoc {
                            name: o.name.to_string(),
                            samples: o.samples,
                            failures: o.failures,
                            counterexample: o.first_counterexample,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!(
            "semifield: {}\nseed: {}\nsamples: {}\n",
            self.semifield, self.seed, self.samples
        );
        let mut violated = 0;
        for suite in &self.suites {
            out.push_str(&format!("{} laws:\n", suite.name));
            for law in &suite.laws {
                if law.failures == 0 {
                    out.push_str(&format!("  PASS {}\n", law.name));
                } else {
                    violated += 1;
                    out.push_str(&format!(
                        "  FAIL {} ({} of {} samples): {}\n",
                        law.name,
                        law.failures,
                        law.samples,
                        law.counterexample.as_deref().unwrap_or("no counterexample"),
                    ));
                }
            }
        }
        if violated == 0 {
            out.push_str("result: all laws hold\n");
        } else {
            out.push_str(&format!("result: {violated} laws violated\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct ResiduateDoc<K> {
    pub solution: Vec<K>,
    pub achieved: Vec<K>,
}

impl<K: Semifield> ResiduateDoc<K> {
    pub fn text(&self) -> String {
        format!(
            "solution: {}\nachieved: {}\n",
            scalars_text(&self.solution),
            scalars_text(&self.achieved),
        )
    }
}

#[derive(Serialize)]
pub struct SimulateDoc<K> {
    pub steps: usize,
    pub orbit: Vec<Vec<K>>,
    pub increments: Vec<Option<f64>>,
    pub estimate: Option<f64>,
    pub max_cycle_mean: K,
    pub deviation: Option<f64>,
}

impl<K: Semifield> SimulateDoc<K> {
    pub fn new(report: &OrbitReport<K>, rho: K) -> Self {
        let deviation = match (report.estimate, rho.exponent()) {
            (Some(est), Some(target)) => Some((est - target).abs()),
            _ => None,
        };
        SimulateDoc {
            steps: report.states.len() - 1,
            orbit: report.states.iter().map(|s| s.entries().to_vec()).collect(),
            increments: report.increments.clone(),
            estimate: report.estimate,
            max_cycle_mean: rho,
            deviation,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("steps: {}\n", self.steps);
        for (t, state) in self.orbit.iter().enumerate() {
            out.push_str(&format!("t={t}: {}\n", scalars_text(state)));
        }
        let incs: Vec<String> = self
            .increments
            .iter()
            .map(|i| i.map_or("n/a".to_string(), sig9))
            .collect();
        out.push_str(&format!("increments: [{}]\n", incs.join(", ")));
        out.push_str(&format!(
            "estimate: {}\n",
            self.estimate.map_or("n/a".to_string(), sig9)
        ));
        out.push_str(&format!(
            "max cycle mean: {}\n",
            scalar_text(self.max_cycle_mean)
        ));
        out.push_str(&format!(
            "deviation: {}\n",
            self.deviation.map_or("n/a".to_string(), sig9)
        ));
        out
    }
}

#[derive(Serialize)]
pub struct UscWitnessDoc<K> {
    pub threshold: K,
    pub superlevel: Vec<usize>,
}

#[derive(Serialize)]
pub struct UscDoc<K> {
    pub usc: bool,
    pub witness: Option<UscWitnessDoc<K>>,
}

impl<K: Semifield> UscDoc<K> {
    pub fn text(&self) -> String {
        match &self.witness {
            None => format!("usc: {}\n", self.usc),
            Some(w) => format!(
                "usc: {}\nthreshold: {}\nsuperlevel: {}\n",
                self.usc,
                scalar_text(w.threshold),
                indices_text(w.superlevel.iter().copied()),
            ),
        }
    }
}

#[derive(Serialize)]
pub struct ProjectDoc<K> {
    pub projection: Vec<K>,
    pub member: bool,
}

impl<K: Semifield> ProjectDoc<K> {
    pub fn text(&self) -> String {
        format!(
            "projection: {}\nmember: {}\n",
            scalars_text(&self.projection),
            self.member,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(2.5), "2.5");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(22026.465794806718), "22026.4658");
        assert_eq!(sig9(-123456789.123), "-123456789");
    }
}
