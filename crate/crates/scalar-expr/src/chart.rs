//! Coordinate charts.
//!
//! A chart lists the real coordinate names an expression may mention, plus a
//! set of complex coordinate labels used by Wirtinger-style derivatives. A
//! complex coordinate may carry a trace binding: `trace = Some("x3")` means
//! the expression only depends on the combination `z + conj(z)` and that
//! combination is named `x3`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("duplicate coordinate name {0:?}")]
    DuplicateName(String),
    #[error("coordinate name {0:?} is reserved")]
    ReservedName(String),
    #[error("trace binding {trace:?} of complex coordinate {complex:?} is not a real coordinate of the chart")]
    UnknownTrace { complex: String, trace: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCoord {
    pub name: String,
    /// Real coordinate equal to `z + conj(z)`, when the chart is a tube.
    pub trace: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    reals: Vec<String>,
    complexes: Vec<ComplexCoord>,
}

const RESERVED: [&str; 4] = ["i", "ln", "sqrt", "exp"];

impl Chart {
    pub fn new(
        reals: Vec<String>,
        complexes: Vec<ComplexCoord>,
    ) -> Result<Self, ChartError> {
        let mut seen = std::collections::BTreeSet::new();
        for name in reals
            .iter()
            .chain(complexes.iter().map(|c| &c.name))
        {
            if RESERVED.contains(&name.as_str()) {
                return Err(ChartError::ReservedName(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(ChartError::DuplicateName(name.clone()));
            }
        }
        for c in &complexes {
            if let Some(t) = &c.trace {
                if !reals.iter().any(|r| r == t) {
                    return Err(ChartError::UnknownTrace {
                        complex: c.name.clone(),
                        trace: t.clone(),
                    });
                }
            }
        }
        Ok(Chart { reals, complexes })
    }

    /// Chart for tube hypersurfaces in C^4: expressions live in x1, x2, x3
    /// with x_j = z_j + conj(z_j), and z4 is transverse.
    pub fn tube() -> Self {
        let reals = vec!["x1".into(), "x2".into(), "x3".into()];
        let complexes = (1..=4)
            .map(|j| ComplexCoord {
                name: format!("z{j}"),
                trace: if j < 4 { Some(format!("x{j}")) } else { None },
            })
            .collect();
        Chart::new(reals, complexes).expect("tube chart is valid")
    }

    /// Chart with the given real coordinates and no complex structure.
    pub fn real(names: &[&str]) -> Result<Self, ChartError> {
        Chart::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    pub fn reals(&self) -> &[String] {
        &self.reals
    }

    pub fn complexes(&self) -> &[ComplexCoord] {
        &self.complexes
    }

    pub fn has_real(&self, name: &str) -> bool {
        self.reals.iter().any(|r| r == name)
    }

    pub fn complex(&self, name: &str) -> Option<&ComplexCoord> {
        self.complexes.iter().find(|c| c.name == name)
    }
}
