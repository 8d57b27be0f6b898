//! Exterior derivative on coordinate chart coframes.

use scalar_expr::wirtinger;

use crate::error::FormError;
use crate::form::{Form, MAX_DEGREE};

/// d on a chart coframe: coefficients are differentiated through the chart's
/// Wirtinger operators and paired with the matching coordinate differentials.
/// Basis differentials are closed, so no structure terms appear.
pub fn d_chart(a: &Form) -> Result<Form, FormError> {
    let core = a.core().clone();
    let (chart, diffs) = core.chart_binding().ok_or(FormError::NotAChartCoframe)?;
    let out_degree = a.degree() + 1;
    if out_degree > MAX_DEGREE {
        return Err(FormError::DegreeCap(out_degree));
    }
    let mut out = Form::zero(core.clone(), out_degree);
    for (indices, coeff) in a.terms() {
        for (slot, differential) in diffs.iter().enumerate() {
            // dz and dzb both carry the trace derivative on a tube chart,
            // and coordinates without a trace contribute nothing
            let dc = wirtinger(coeff, chart, &differential.coord)?;
            if dc.is_structural_zero() {
                continue;
            }
            let mut term_indices = Vec::with_capacity(indices.len() + 1);
            term_indices.push(slot as u8);
            term_indices.extend_from_slice(indices);
            out.add_term_unsorted(term_indices, dc);
        }
    }
    Ok(out)
}
