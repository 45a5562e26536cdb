use num_traits::{One, Zero};

use super::WeightedAutomaton;
use crate::error::{Error, Result};
use crate::ratmath::{Rational, Matrix};
use crate::seqexpr::SeqExpr;

/// Compiles a poly-rational expression into a polynomially ambiguous
/// automaton denoting the same sequence. Intermediate automata are trimmed.
pub fn compile_expr_to_wa(e: &SeqExpr) -> Result<WeightedAutomaton> {
    Ok(match e {
        SeqExpr::Geo { a, lambda } => WeightedAutomaton::new(
            Matrix::from_rows(vec![vec![lambda.clone()]]),
            vec![a.clone()],
            vec![Rational::one()],
        )?
        .trim(),
        SeqExpr::Arith { a, b } => {
            // M^n = [[1, n], [0, 1]], so (1, 0) M^n (a, b)^t = a + b n
            let one = Rational::one();
            let zero = Rational::zero();
            let m = Matrix::from_rows(vec![
                vec![one.clone(), one.clone()],
                vec![zero.clone(), one.clone()],
            ]);
            WeightedAutomaton::new(m, vec![one, zero], vec![a.clone(), b.clone()])?.trim()
        }
        SeqExpr::Fin(values) => {
            let n = values.len();
            let mut m = Matrix::zeros(n, n);
            for i in 1..n {
                m.set(i - 1, i, Rational::one());
            }
            let mut initial = vec![Rational::zero(); n];
            if n > 0 {
                initial[0] = Rational::one();
            }
            WeightedAutomaton::new(m, initial, values.clone())?.trim()
        }
        SeqExpr::Sum(l, r) => compile_expr_to_wa(l)?
            .union(&compile_expr_to_wa(r)?)
            .trim(),
        SeqExpr::Hadamard(l, r) => compile_expr_to_wa(l)?
            .product(&compile_expr_to_wa(r)?)
            .trim(),
        SeqExpr::Shift(a, inner) => compile_expr_to_wa(inner)?.shift(a).trim(),
        SeqExpr::Shuffle(children) => {
            let parts = children
                .iter()
                .map(compile_expr_to_wa)
                .collect::<Result<Vec<_>>>()?;
            WeightedAutomaton::shuffle(&parts)?.trim()
        }
        SeqExpr::Cauchy(..) | SeqExpr::Star(_) => {
            return Err(Error::Fragment(format!(
                "{e} uses Cauchy product or star, which are outside the poly-rational fragment"
            )))
        }
    })
}
