//! Coframes: ordered bases of one-form symbols with conjugation pairing.

use std::collections::BTreeMap;
use std::sync::Arc;

use scalar_expr::Chart;

use crate::error::FormError;

/// Reality type of a basis one-form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reality {
    /// Fixed by conjugation.
    Real,
    /// Conjugate is the named partner symbol.
    PairedWith(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOneForm {
    pub symbol: String,
    pub reality: Reality,
}

impl BasisOneForm {
    pub fn real(symbol: &str) -> Self {
        BasisOneForm {
            symbol: symbol.to_string(),
            reality: Reality::Real,
        }
    }

    pub fn paired(symbol: &str, partner: &str) -> Self {
        BasisOneForm {
            symbol: symbol.to_string(),
            reality: Reality::PairedWith(partner.to_string()),
        }
    }
}

/// A coordinate differential underlying a chart coframe basis slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordDifferential {
    /// Complex chart coordinate the differential belongs to.
    pub coord: String,
    /// Whether this is the conjugated differential.
    pub conjugated: bool,
}

/// Shared immutable core of a coframe: the ordered basis, the conjugation
/// action on coefficient symbols, and an optional chart binding that makes
/// the coordinate exterior derivative available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coframe {
    basis: Vec<BasisOneForm>,
    index: BTreeMap<String, u8>,
    conj_index: Vec<u8>,
    scalar_pairs: BTreeMap<String, String>,
    chart: Option<(Chart, Vec<CoordDifferential>)>,
}

impl Coframe {
    fn build(
        basis: Vec<BasisOneForm>,
        scalar_pairs: BTreeMap<String, String>,
        chart: Option<(Chart, Vec<CoordDifferential>)>,
    ) -> Result<Arc<Self>, FormError> {
        let mut index = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            if index.insert(b.symbol.clone(), k as u8).is_some() {
                return Err(FormError::DuplicateSymbol(b.symbol.clone()));
            }
        }
        let mut conj_index = Vec::with_capacity(basis.len());
        for b in &basis {
            match &b.reality {
                Reality::Real => conj_index.push(index[&b.symbol]),
                Reality::PairedWith(p) => {
                    let pk = *index
                        .get(p)
                        .ok_or_else(|| FormError::UnknownSymbol(p.clone()))?;
                    match &basis[pk as usize].reality {
                        Reality::PairedWith(back) if back == &b.symbol => conj_index.push(pk),
                        _ => {
                            return Err(FormError::AsymmetricPairing(
                                b.symbol.clone(),
                                p.clone(),
                            ))
                        }
                    }
                }
            }
        }
        for (a, b) in &scalar_pairs {
            match scalar_pairs.get(b) {
                Some(back) if back == a => {}
                _ => return Err(FormError::AsymmetricPairing(a.clone(), b.clone())),
            }
        }
        Ok(Arc::new(Coframe {
            basis,
            index,
            conj_index,
            scalar_pairs,
            chart,
        }))
    }

    /// Abstract coframe core with the given basis. `scalar_pairs` lists the
    /// coefficient symbols that swap under conjugation (for example an
    /// auxiliary function and its conjugate); all other symbols are treated
    /// as real.
    pub fn abstract_frame(
        basis: Vec<BasisOneForm>,
        scalar_pairs: &[(&str, &str)],
    ) -> Result<Arc<Self>, FormError> {
        let mut pairs = BTreeMap::new();
        for (a, b) in scalar_pairs {
            pairs.insert(a.to_string(), b.to_string());
            pairs.insert(b.to_string(), a.to_string());
        }
        Coframe::build(basis, pairs, None)
    }

    /// Chart coframe `dz1..dzN, dz1b..dzNb` over the chart's complex
    /// coordinates, in that order.
    pub fn chart_frame(chart: Chart) -> Arc<Self> {
        let mut basis = Vec::new();
        let mut diffs = Vec::new();
        for c in chart.complexes() {
            basis.push(BasisOneForm::paired(
                &format!("d{}", c.name),
                &format!("d{}b", c.name),
            ));
            diffs.push(CoordDifferential {
                coord: c.name.clone(),
                conjugated: false,
            });
        }
        for c in chart.complexes() {
            basis.push(BasisOneForm::paired(
                &format!("d{}b", c.name),
                &format!("d{}", c.name),
            ));
            diffs.push(CoordDifferential {
                coord: c.name.clone(),
                conjugated: true,
            });
        }
        Coframe::build(basis, BTreeMap::new(), Some((chart, diffs)))
            .expect("chart coframe basis is valid")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisOneForm] {
        &self.basis
    }

    pub fn index_of(&self, symbol: &str) -> Result<u8, FormError> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| FormError::UnknownSymbol(symbol.to_string()))
    }

    pub fn symbol(&self, idx: u8) -> &str {
        &self.basis[idx as usize].symbol
    }

    /// Index of the conjugate basis form (self for real forms).
    pub fn conjugate_index(&self, idx: u8) -> u8 {
        self.conj_index[idx as usize]
    }

    pub fn scalar_conjugate(&self, name: &str) -> Option<String> {
        self.scalar_pairs.get(name).cloned()
    }

    pub fn chart(&self) -> Option<&Chart> {
        self.chart.as_ref().map(|(c, _)| c)
    }

    pub(crate) fn chart_binding(&self) -> Option<(&Chart, &[CoordDifferential])> {
        self.chart.as_ref().map(|(c, d)| (c, d.as_slice()))
    }
}
