//! Defining functions of tube hypersurfaces and their first-order data.

use std::sync::Arc;

use exterior_forms::{Coframe, Form, ScalarMatrix};
use scalar_expr::{certify_zero, conj, diff, free_coords, parse, Chart, ScalarExpr};

use crate::AnalysisError;

/// Real function f(x1, x2, x3) cutting out the tube z4 + conj(z4) = f.
/// The traces x_j = z_j + conj(z_j) are the only coordinates allowed, so
/// Wirtinger derivatives along z_j agree with real partials along x_j.
#[derive(Debug, Clone)]
pub struct DefiningFunction {
    f: ScalarExpr,
}

impl DefiningFunction {
    pub fn new(f: ScalarExpr) -> Result<Self, AnalysisError> {
        for c in free_coords(&f) {
            if c != "x1" && c != "x2" && c != "x3" {
                return Err(AnalysisError::UnknownCoordinate(c));
            }
        }
        // realness must be structurally evident once canonicalized
        let residual = conj(&f) - f.clone();
        if certify_zero(&residual) != Some(true) {
            return Err(AnalysisError::NotReal);
        }
        Ok(DefiningFunction { f })
    }

    pub fn parse(source: &str) -> Result<Self, AnalysisError> {
        Ok(Self::new(parse(source)?)?)
    }

    pub fn expr(&self) -> &ScalarExpr {
        &self.f
    }

    /// d f / d x_j for j in 1..=3.
    pub fn partial(&self, j: usize) -> ScalarExpr {
        assert!((1..=3).contains(&j), "partial index out of range");
        diff(&self.f, &format!("x{j}"))
    }

    pub fn second_partial(&self, j: usize, k: usize) -> ScalarExpr {
        assert!((1..=3).contains(&j) && (1..=3).contains(&k));
        diff(&self.partial(j), &format!("x{k}"))
    }
}

/// Chart coframe dz1..dz4, dz1b..dz4b of the ambient tube chart.
pub fn tube_frame() -> Arc<Coframe> {
    Coframe::chart_frame(Chart::tube())
}

/// Contact form -i f_j dz^j + i dz^4 annihilating the CR distribution.
/// Real on the hypersurface, where dz4 + dz4b = df.
pub fn contact_form(df: &DefiningFunction) -> Form {
    let core = tube_frame();
    let mut parts: Vec<(Vec<&str>, ScalarExpr)> = Vec::new();
    let symbols = ["dz1", "dz2", "dz3"];
    for (j, sym) in symbols.iter().enumerate() {
        let fj = df.partial(j + 1);
        if !fj.is_structural_zero() {
            parts.push((vec![*sym], -(ScalarExpr::i() * fj)));
        }
    }
    parts.push((vec!["dz4"], ScalarExpr::i()));
    let slices: Vec<(&[&str], ScalarExpr)> =
        parts.iter().map(|(s, c)| (s.as_slice(), c.clone())).collect();
    Form::from_components(core, 1, &slices).expect("chart symbols are fixed")
}

/// Matrix of second partials f_jk, the Levi form of the tube in the frame of
/// coordinate differentials.
pub fn levi_matrix(df: &DefiningFunction) -> ScalarMatrix {
    let rows: Vec<Vec<ScalarExpr>> = (1..=3)
        .map(|j| (1..=3).map(|k| df.second_partial(j, k)).collect())
        .collect();
    ScalarMatrix::from_rows(rows).expect("3x3 rows")
}

/// Levi determinant specialized to f12 = 0:
/// f11 f22 f33 - f11 f23^2 - f22 f13^2. Its vanishing certifies a degenerate
/// Levi form. The f12 = 0 hypothesis is the caller-checked precondition; it
/// is verified here with the supplied zero test.
pub fn degeneracy_residual(
    df: &DefiningFunction,
    cfg: &scalar_expr::ZeroTestConfig,
) -> Result<ScalarExpr, AnalysisError> {
    let f12 = df.second_partial(1, 2);
    if !scalar_expr::is_zero(&f12, cfg)? {
        return Err(AnalysisError::Precondition(
            "mixed partial f12 must vanish for the split tube form".into(),
        ));
    }
    let f11 = df.second_partial(1, 1);
    let f22 = df.second_partial(2, 2);
    let f33 = df.second_partial(3, 3);
    let f13 = df.second_partial(1, 3);
    let f23 = df.second_partial(2, 3);
    let sq = |e: &ScalarExpr| ScalarExpr::product(vec![e.clone(), e.clone()]);
    Ok(ScalarExpr::product(vec![f11.clone(), f22.clone(), f33])
        - f11 * sq(&f23)
        - f22 * sq(&f13))
}

/// The two residuals f13^2 - f11 f33 / 2 and f23^2 - f22 f33 / 2. Their
/// joint vanishing factors the degeneracy determinant and is exactly what
/// the two-block diagonalizing coframe needs.
pub fn degeneracy_split_residuals(df: &DefiningFunction) -> (ScalarExpr, ScalarExpr) {
    let half = ScalarExpr::rat(1, 2);
    let f33 = df.second_partial(3, 3);
    let mk = |k: usize| {
        let fk3 = df.second_partial(k, 3);
        let fkk = df.second_partial(k, k);
        ScalarExpr::product(vec![fk3.clone(), fk3])
            - ScalarExpr::product(vec![half.clone(), fkk, f33.clone()])
    };
    (mk(1), mk(2))
}
