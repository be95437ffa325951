use thiserror::Error;

use super::Term;
use crate::algebra::Algebra;
use crate::bits::Bits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable x{0} is unbound")]
    Unbound(usize),

    #[error("{algebra} does not support operator {op}")]
    Unsupported { op: String, algebra: String },

    #[error("index {index} out of range for dimension {alpha}")]
    Index { index: usize, alpha: usize },
}

fn unsupported<A: Algebra + ?Sized>(a: &A, op: String) -> EvalError {
    EvalError::Unsupported {
        op,
        algebra: a.name(),
    }
}

fn check<A: Algebra + ?Sized>(a: &A, index: usize) -> Result<(), EvalError> {
    if index >= a.alpha() {
        Err(EvalError::Index {
            index,
            alpha: a.alpha(),
        })
    } else {
        Ok(())
    }
}

/// Evaluates `t` in `a` with `env[n]` as the value of `xn`.
pub fn eval<A: Algebra + ?Sized>(t: &Term, a: &A, env: &[Bits]) -> Result<Bits, EvalError> {
    Ok(match t {
        Term::Var(n) => env.get(*n).cloned().ok_or(EvalError::Unbound(*n))?,
        Term::Zero => a.zero(),
        Term::One => a.one(),
        Term::Sum(x, y) => {
            let mut v = eval(x, a, env)?;
            v.union_with(&eval(y, a, env)?);
            v
        }
        Term::Product(x, y) => {
            let mut v = eval(x, a, env)?;
            v.intersect_with(&eval(y, a, env)?);
            v
        }
        Term::Complement(x) => eval(x, a, env)?.complement(),
        Term::Cyl(i, x) => {
            check(a, *i)?;
            a.cyl(*i, &eval(x, a, env)?)
        }
        Term::CylSet(g, x) => {
            for &i in g {
                check(a, i)?;
            }
            a.cyl_set(g, &eval(x, a, env)?)
        }
        Term::Subst(i, j, x) => {
            check(a, *i)?;
            check(a, *j)?;
            let v = eval(x, a, env)?;
            a.subst(*i, *j, &v)
                .ok_or_else(|| unsupported(a, format!("s({i},{j})")))?
        }
        Term::Perm(i, j, x) => {
            check(a, *i)?;
            check(a, *j)?;
            let v = eval(x, a, env)?;
            a.perm(*i, *j, &v)
                .ok_or_else(|| unsupported(a, format!("p({i},{j})")))?
        }
        Term::Diag(i, j) => {
            check(a, *i)?;
            check(a, *j)?;
            a.diag(*i, *j)
                .ok_or_else(|| unsupported(a, format!("d({i},{j})")))?
        }
        Term::SubstSigma(sigma, x) => {
            if sigma.alpha() != a.alpha() {
                return Err(EvalError::Index {
                    index: sigma.alpha(),
                    alpha: a.alpha(),
                });
            }
            let v = eval(x, a, env)?;
            a.subst_sigma(sigma, &v)
                .ok_or_else(|| unsupported(a, format!("ssub({sigma})")))?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;
    use crate::set_algebra::SetAlgebra;
    use crate::terms::parse_term;

    fn a32() -> SetAlgebra {
        SetAlgebra::new(3, 2).unwrap()
    }

    #[test]
    fn diagonal_term_is_the_set_diagonal() {
        let a = a32();
        let v = eval(&parse_term("d(0,1)", 3).unwrap(), &a, &[]).unwrap();
        assert_eq!(&v, Relation::diag(a.shape(), 0, 1).unwrap().bits());
    }

    #[test]
    fn excluded_middle_is_top() {
        let a = a32();
        let t = parse_term("x0 + -x0", 3).unwrap();
        for m in [0u64, 1, 77, 255] {
            assert!(eval(&t, &a, &[a.element(m)]).unwrap().is_full());
        }
    }

    #[test]
    fn substituted_diagonal_is_top() {
        let a = a32();
        let v = eval(&parse_term("s(0,1,d(0,1))", 3).unwrap(), &a, &[]).unwrap();
        assert!(v.is_full());
    }

    #[test]
    fn unbound_variable() {
        let a = a32();
        let t = parse_term("x0 + x1", 3).unwrap();
        assert_eq!(eval(&t, &a, &[a.zero()]), Err(EvalError::Unbound(1)));
    }

    #[test]
    fn index_outside_algebra() {
        let a = SetAlgebra::new(2, 2).unwrap();
        let t = parse_term("c(2,x0)", 3).unwrap();
        assert!(matches!(
            eval(&t, &a, &[a.zero()]),
            Err(EvalError::Index { .. })
        ));
    }
}
