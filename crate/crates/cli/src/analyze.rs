//! The full analysis of one representation.

use std::time::Instant;

use serde::Serialize;
use surfrep::cohomology::h1;
use surfrep::io::to_canonical_string;
use surfrep::scalar::Real;
use surfrep::symplectic::UNITARY_TOL;
use surfrep::{
    dims_report, is_good, obstruction_class, pairing_matrix, verify_lagrangian, DimsReport, Error, Family, FormKind, GroupDescriptor,
    LagrangianReport, ObstructionClass, Representation, StabilizerReport, SurfaceRep,
};

use crate::{exit_code, CliError, Source};

#[derive(Debug, Clone, Serialize)]
pub struct RepEcho {
    pub descriptor: GroupDescriptor,
    pub genus: usize,
    pub strict_schottky: bool,
    pub schottky: bool,
    pub unitary: bool,
    pub relator_residual: f64,
    pub relator_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingSummary {
    pub form: FormKind,
    pub dim: usize,
    pub rank: usize,
    pub nondegenerate: bool,
    /// Antisymmetry defect for the bilinear form, hermiticity defect for
    /// the hermitian one.
    pub symmetry_defect: f64,
    pub scale: f64,
}

/// Fields after `representation` appear only when their preconditions held.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub representation: RepEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<StabilizerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimsReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairing: Vec<PairingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lagrangian: Option<LagrangianReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<f64>,
}

impl AnalysisReport {
    fn new(rep: &SurfaceRep) -> Self {
        let tol = f64::check_tol();
        AnalysisReport {
            representation: RepEcho {
                descriptor: rep.descriptor(),
                genus: rep.genus(),
                strict_schottky: rep.is_strict_schottky(tol),
                schottky: rep.is_schottky(tol),
                unitary: rep.is_unitary(UNITARY_TOL),
                relator_residual: rep.relator_residual(),
                relator_tol: rep.tol(),
            },
            stabilizer: None,
            dims: None,
            pairing: Vec::new(),
            lagrangian: None,
            obstruction: None,
            error: None,
            wall_clock_ms: None,
        }
    }

    fn fill(&mut self, rep: &SurfaceRep, form: Option<FormKind>) -> surfrep::Result<()> {
        rep.validate()?;
        self.stabilizer = match is_good(rep) {
            Ok(s) => Some(s),
            Err(Error::UnsupportedIrreducibility { .. }) => None,
            Err(e) => return Err(e),
        };
        let dims = dims_report(rep)?;
        self.dims = Some(dims);
        let unitary = self.representation.unitary;
        let forms = match form {
            Some(FormKind::Hermitian) if !unitary => {
                return Err(Error::NotUnitary { residual: rep.unitarity_residual() });
            }
            Some(k) => vec![k],
            None if unitary => vec![FormKind::Bilinear, FormKind::Hermitian],
            None => vec![FormKind::Bilinear],
        };
        let h = h1(rep)?;
        for kind in forms {
            let p = pairing_matrix(rep, &h, kind)?;
            let symmetry_defect = match kind {
                FormKind::Bilinear => p.antisymmetry_defect(),
                FormKind::Hermitian => p.hermiticity_defect(),
            };
            self.pairing.push(PairingSummary {
                form: kind,
                dim: p.dim(),
                rank: p.rank,
                nondegenerate: p.rank == p.dim(),
                symmetry_defect,
                scale: p.scale(),
            });
        }
        let good = self.stabilizer.is_some_and(|s| s.is_good);
        if good && unitary && self.representation.strict_schottky {
            self.lagrangian = Some(verify_lagrangian(rep)?);
        }
        if rep.descriptor().family() == Family::Psl {
            self.obstruction = Some(obstruction_class(rep)?);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(self).expect("report fields are plain data")
    }
}

/// Runs every applicable analysis. On a violated precondition the error
/// carries the partial report, which always includes the relator residual.
pub fn analyze(source: &Source, form: Option<FormKind>, timing: bool) -> Result<AnalysisReport, CliError> {
    let start = Instant::now();
    let rep = source.load()?;
    let mut report = AnalysisReport::new(&rep);
    let outcome = report.fill(&rep, form);
    if timing {
        report.wall_clock_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    match outcome {
        Ok(()) => Ok(report),
        Err(e) => {
            report.error = Some(e.to_string());
            Err(CliError { code: exit_code(&e), message: e.to_string(), partial: Some(report.to_json()) })
        }
    }
}
