// SPDX-License-Identifier: Apache-2.0

//! Constant-folded angle expressions.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Expression tree; gate-definition parameters are referenced by position.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Param(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, params: &[f64]) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Param(i) => params[*i],
            Expr::Neg(e) => -e.eval(params),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(params), b.eval(params));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, e) => {
                let v = e.eval(params);
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Tan => v.tan(),
                    Func::Exp => v.exp(),
                    Func::Ln => v.ln(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        }
    }

    /// Folds parameter-free subtrees into literals.
    pub fn fold(self) -> Expr {
        match self {
            Expr::Neg(e) => match e.fold() {
                Expr::Num(v) => Expr::Num(-v),
                e => Expr::Neg(Box::new(e)),
            },
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.fold(), b.fold());
                let e = Expr::Bin(op, Box::new(a), Box::new(b));
                match &e {
                    Expr::Bin(_, a, b) if matches!(**a, Expr::Num(_)) && matches!(**b, Expr::Num(_)) => {
                        Expr::Num(e.eval(&[]))
                    }
                    _ => e,
                }
            }
            Expr::Call(f, e) => match e.fold() {
                Expr::Num(v) => Expr::Num(Expr::Call(f, Box::new(Expr::Num(v))).eval(&[])),
                e => Expr::Call(f, Box::new(e)),
            },
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn folds_constant_subtrees() {
        let e = Expr::Bin(BinOp::Div, Box::new(Expr::Num(PI)), Box::new(Expr::Num(2.0)));
        assert_eq!(e.fold(), Expr::Num(PI / 2.0));
        let e = Expr::Bin(
            BinOp::Add,
            Box::new(Expr::Param(0)),
            Box::new(Expr::Neg(Box::new(Expr::Num(1.0)))),
        )
        .fold();
        assert_eq!(e.eval(&[3.0]), 2.0);
    }
}
