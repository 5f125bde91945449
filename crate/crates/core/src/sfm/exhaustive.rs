use crate::error::{Error, Result};
use crate::poset::{for_each_ideal, Ideal};

use super::SfmProblem;

/// Scans every ideal; ties go to the smallest ideal in (size, lex) order.
pub(super) fn minimize(problem: &SfmProblem<'_>, cap: usize) -> Result<(Ideal, usize)> {
    let size = problem.poset().len();
    if size > cap {
        return Err(Error::PosetTooLarge { size, cap });
    }
    let mut best: Option<(usize, Ideal)> = None;
    for_each_ideal(problem.poset().poset(), |inside| {
        let value = problem.evaluate_indicator(inside);
        let better = match &best {
            None => true,
            Some((v, _)) if value < *v => true,
            Some((v, ideal)) if value == *v => Ideal::from_indicator(inside) < *ideal,
            _ => false,
        };
        if better {
            best = Some((value, Ideal::from_indicator(inside)));
        }
        true
    });
    let (value, ideal) = best.expect("the empty ideal always exists");
    Ok((ideal, value))
}
