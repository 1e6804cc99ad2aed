// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::f64::consts::PI;

use super::expr::{BinOp, Expr, Func};
use super::lexer::{Lexer, Token, TokenKind};
use super::{QasmError, RegisterError};
use crate::ir::{Circuit, Gate, GateKind, Qubit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterEntry {
    pub name: String,
    pub width: usize,
    pub base: usize,
}

/// Registers of one kind (quantum or classical) laid out back to back in
/// declaration order.
#[derive(Debug, Clone, Default)]
pub struct RegisterTable {
    entries: Vec<RegisterEntry>,
    index: HashMap<String, usize>,
    total: usize,
}

impl RegisterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a register and returns its base offset.
    pub fn add(&mut self, name: &str, width: usize) -> Result<usize, RegisterError> {
        if self.index.contains_key(name) {
            return Err(RegisterError::Duplicate(name.to_owned()));
        }
        let base = self.total;
        self.index.insert(name.to_owned(), self.entries.len());
        self.entries.push(RegisterEntry {
            name: name.to_owned(),
            width,
            base,
        });
        self.total += width;
        Ok(base)
    }

    pub fn get(&self, name: &str) -> Option<&RegisterEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[RegisterEntry] {
        &self.entries
    }

    /// Total width of all registers.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Maps `name[index]` to its position in the flat range.
    pub fn flatten(&self, name: &str, index: usize) -> Result<usize, RegisterError> {
        let entry = self.get(name).ok_or_else(|| RegisterError::Unknown(name.to_owned()))?;
        if index >= entry.width {
            return Err(RegisterError::IndexOutOfRange {
                name: name.to_owned(),
                index,
                width: entry.width,
            });
        }
        Ok(entry.base + index)
    }
}

#[derive(Debug, Clone)]
enum Callee {
    Builtin(GateKind),
    User(usize),
    Barrier,
}

#[derive(Debug, Clone)]
struct BodyOp {
    callee: Callee,
    params: Vec<Expr>,
    args: Vec<usize>,
}

#[derive(Debug, Clone)]
struct GateDef {
    num_params: usize,
    num_args: usize,
    body: Vec<BodyOp>,
    opaque: bool,
}

#[derive(Debug, Clone, Copy)]
enum Operand {
    Bit(usize),
    Register { base: usize, width: usize },
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Token<'a>>,
    last_pos: (u32, u32),
    qregs: RegisterTable,
    cregs: RegisterTable,
    defs: Vec<GateDef>,
    def_names: HashMap<String, usize>,
    builtins: HashMap<&'static str, GateKind>,
    gates: Vec<Gate>,
}

/// Parses OpenQASM 2.0 source into a circuit over flattened qubit indices.
pub fn parse(source: &str) -> Result<Circuit, QasmError> {
    let mut builtins = HashMap::new();
    for kind in GateKind::ALL {
        if !kind.is_directive() {
            builtins.insert(kind.name(), kind);
        }
    }
    for alias in ["U", "u", "CX", "cnot", "p", "cp", "c3xsqrtx"] {
        builtins.insert(alias, GateKind::from_name(alias).expect("alias"));
    }
    let mut p = Parser {
        lexer: Lexer::new(source),
        peeked: None,
        last_pos: (1, 1),
        qregs: RegisterTable::new(),
        cregs: RegisterTable::new(),
        defs: Vec::new(),
        def_names: HashMap::new(),
        builtins,
        gates: Vec::with_capacity(source.len() / 12),
    };
    p.header()?;
    while p.peek()?.is_some() {
        p.statement()?;
    }
    if p.qregs.total() == 0 && p.qregs.entries().is_empty() {
        let (line, col) = p.last_pos;
        return Err(QasmError::Syntax {
            line,
            col,
            message: "no qreg declared".into(),
        });
    }
    let mut circuit = Circuit::with_capacity(p.qregs.total(), p.cregs.total(), p.gates.len());
    for gate in p.gates {
        circuit.append(gate).map_err(|e| QasmError::Syntax {
            line: p.last_pos.0,
            col: p.last_pos.1,
            message: e.to_string(),
        })?;
    }
    Ok(circuit)
}

fn syntax(tok: &Token<'_>, message: impl Into<String>) -> QasmError {
    QasmError::Syntax {
        line: tok.line,
        col: tok.col,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<Option<Token<'a>>, QasmError> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next_token()?;
        }
        Ok(self.peeked)
    }

    fn next(&mut self) -> Result<Token<'a>, QasmError> {
        let tok = match self.peeked.take() {
            Some(t) => t,
            None => self.lexer.next_token()?.ok_or_else(|| QasmError::Syntax {
                line: self.last_pos.0,
                col: self.last_pos.1,
                message: "unexpected end of input".into(),
            })?,
        };
        self.last_pos = (tok.line, tok.col);
        Ok(tok)
    }

    fn peek_is(&mut self, symbol: &str) -> Result<bool, QasmError> {
        Ok(self
            .peek()?
            .is_some_and(|t| t.kind == TokenKind::Symbol && t.text == symbol))
    }

    fn expect(&mut self, symbol: &str) -> Result<Token<'a>, QasmError> {
        let tok = self.next()?;
        if tok.kind != TokenKind::Symbol || tok.text != symbol {
            return Err(syntax(&tok, format!("expected `{symbol}`, found `{}`", tok.text)));
        }
        Ok(tok)
    }

    fn identifier(&mut self) -> Result<Token<'a>, QasmError> {
        let tok = self.next()?;
        if tok.kind != TokenKind::Identifier {
            return Err(syntax(&tok, format!("expected identifier, found `{}`", tok.text)));
        }
        Ok(tok)
    }

    fn integer(&mut self) -> Result<usize, QasmError> {
        let tok = self.next()?;
        if tok.kind != TokenKind::Number {
            return Err(syntax(&tok, format!("expected integer, found `{}`", tok.text)));
        }
        tok.text
            .parse()
            .map_err(|_| syntax(&tok, format!("expected integer, found `{}`", tok.text)))
    }

    fn header(&mut self) -> Result<(), QasmError> {
        let tok = self.next()?;
        if tok.kind != TokenKind::Keyword || tok.text != "OPENQASM" {
            return Err(syntax(&tok, "expected `OPENQASM 2.0;` header"));
        }
        let version = self.next()?;
        if version.kind != TokenKind::Number || !version.text.starts_with('2') {
            return Err(QasmError::Unsupported {
                construct: format!("OpenQASM version {}", version.text),
                line: version.line,
                col: version.col,
            });
        }
        self.expect(";")?;
        Ok(())
    }

    fn statement(&mut self) -> Result<(), QasmError> {
        let tok = self.next()?;
        match (tok.kind, tok.text) {
            (TokenKind::Keyword, "include") => {
                let file = self.next()?;
                if file.kind != TokenKind::String {
                    return Err(syntax(&file, "expected file name string"));
                }
                if file.text != "qelib1.inc" {
                    return Err(QasmError::Unsupported {
                        construct: format!("include \"{}\"", file.text),
                        line: file.line,
                        col: file.col,
                    });
                }
                self.expect(";")?;
            }
            (TokenKind::Keyword, kw @ ("qreg" | "creg")) => {
                let name = self.identifier()?;
                self.expect("[")?;
                let width = self.integer()?;
                self.expect("]")?;
                self.expect(";")?;
                let table = if kw == "qreg" { &mut self.qregs } else { &mut self.cregs };
                table.add(name.text, width).map_err(|source| QasmError::Register {
                    line: name.line,
                    col: name.col,
                    source,
                })?;
            }
            (TokenKind::Keyword, kw @ ("gate" | "opaque")) => self.gate_definition(kw == "opaque")?,
            (TokenKind::Keyword, "measure") => self.measure()?,
            (TokenKind::Keyword, "barrier") => {
                let operands = self.operand_list()?;
                self.expect(";")?;
                let mut qubits: Vec<Qubit> = Vec::new();
                for op in operands {
                    let range = match op {
                        Operand::Bit(q) => q..q + 1,
                        Operand::Register { base, width } => base..base + width,
                    };
                    for q in range {
                        if !qubits.contains(&(q as Qubit)) {
                            qubits.push(q as Qubit);
                        }
                    }
                }
                self.gates.push(Gate::barrier(&qubits));
            }
            (TokenKind::Keyword, kw @ ("reset" | "if")) => {
                return Err(QasmError::Unsupported {
                    construct: kw.to_owned(),
                    line: tok.line,
                    col: tok.col,
                })
            }
            (TokenKind::Identifier, _) => self.gate_call(tok)?,
            _ => return Err(syntax(&tok, format!("unexpected `{}`", tok.text))),
        }
        Ok(())
    }

    fn operand(&mut self, qreg: bool) -> Result<Operand, QasmError> {
        let name = self.identifier()?;
        let table = if qreg { &self.qregs } else { &self.cregs };
        let entry = table.get(name.text).cloned();
        let reg_err = |source| QasmError::Register {
            line: name.line,
            col: name.col,
            source,
        };
        if self.peek_is("[")? {
            self.next()?;
            let index = self.integer()?;
            self.expect("]")?;
            let flat = (if qreg { &self.qregs } else { &self.cregs })
                .flatten(name.text, index)
                .map_err(reg_err)?;
            Ok(Operand::Bit(flat))
        } else {
            let entry = entry.ok_or_else(|| reg_err(RegisterError::Unknown(name.text.to_owned())))?;
            Ok(Operand::Register {
                base: entry.base,
                width: entry.width,
            })
        }
    }

    fn operand_list(&mut self) -> Result<Vec<Operand>, QasmError> {
        let mut ops = vec![self.operand(true)?];
        while self.peek_is(",")? {
            self.next()?;
            ops.push(self.operand(true)?);
        }
        Ok(ops)
    }

    fn measure(&mut self) -> Result<(), QasmError> {
        let start = self.last_pos;
        let q = self.operand(true)?;
        self.expect("->")?;
        let c = self.operand(false)?;
        self.expect(";")?;
        match (q, c) {
            (Operand::Bit(q), Operand::Bit(c)) => {
                self.gates.push(Gate::measure(q as Qubit, c as Qubit));
            }
            (Operand::Register { base: qb, width: qw }, Operand::Register { base: cb, width: cw }) if qw == cw => {
                for i in 0..qw {
                    self.gates.push(Gate::measure((qb + i) as Qubit, (cb + i) as Qubit));
                }
            }
            _ => {
                return Err(QasmError::Syntax {
                    line: start.0,
                    col: start.1,
                    message: "measure operands must both be bits or equal-width registers".into(),
                })
            }
        }
        Ok(())
    }

    fn gate_definition(&mut self, opaque: bool) -> Result<(), QasmError> {
        let name = self.identifier()?;
        let mut params: Vec<&'a str> = Vec::new();
        if self.peek_is("(")? {
            self.next()?;
            if !self.peek_is(")")? {
                params.push(self.identifier()?.text);
                while self.peek_is(",")? {
                    self.next()?;
                    params.push(self.identifier()?.text);
                }
            }
            self.expect(")")?;
        }
        let mut args: Vec<&'a str> = vec![self.identifier()?.text];
        while self.peek_is(",")? {
            self.next()?;
            args.push(self.identifier()?.text);
        }
        let mut body = Vec::new();
        if opaque {
            self.expect(";")?;
        } else {
            self.expect("{")?;
            while !self.peek_is("}")? {
                body.push(self.body_op(&params, &args)?);
            }
            self.expect("}")?;
        }
        let def = GateDef {
            num_params: params.len(),
            num_args: args.len(),
            body,
            opaque,
        };
        // Library gates keep their native meaning even when a file re-declares them.
        if !self.builtins.contains_key(name.text) {
            self.def_names.insert(name.text.to_owned(), self.defs.len());
            self.defs.push(def);
        }
        Ok(())
    }

    fn body_op(&mut self, params: &[&str], args: &[&str]) -> Result<BodyOp, QasmError> {
        let tok = self.next()?;
        let callee = match (tok.kind, tok.text) {
            (TokenKind::Keyword, "barrier") => Callee::Barrier,
            (TokenKind::Identifier, name) => self.resolve(&tok, name)?,
            _ => return Err(syntax(&tok, format!("unexpected `{}` in gate body", tok.text))),
        };
        let exprs = if self.peek_is("(")? {
            self.next()?;
            self.expr_list(params)?
        } else {
            Vec::new()
        };
        let mut indices = Vec::new();
        loop {
            let arg = self.identifier()?;
            let idx = args
                .iter()
                .position(|a| *a == arg.text)
                .ok_or_else(|| syntax(&arg, format!("unknown gate argument `{}`", arg.text)))?;
            if indices.contains(&idx) {
                return Err(syntax(&arg, format!("argument `{}` repeated", arg.text)));
            }
            indices.push(idx);
            if self.peek_is(",")? {
                self.next()?;
            } else {
                break;
            }
        }
        self.expect(";")?;
        if !matches!(callee, Callee::Barrier) {
            let (np, na) = self.signature(&callee);
            self.check_arity(&tok, exprs.len(), np, indices.len(), na)?;
        }
        Ok(BodyOp {
            callee,
            params: exprs,
            args: indices,
        })
    }

    fn resolve(&self, tok: &Token<'_>, name: &str) -> Result<Callee, QasmError> {
        if let Some(&kind) = self.builtins.get(name) {
            return Ok(Callee::Builtin(kind));
        }
        if let Some(&i) = self.def_names.get(name) {
            if self.defs[i].opaque {
                return Err(QasmError::Unsupported {
                    construct: format!("call to opaque gate `{name}`"),
                    line: tok.line,
                    col: tok.col,
                });
            }
            return Ok(Callee::User(i));
        }
        Err(QasmError::UnknownGate {
            name: name.to_owned(),
            line: tok.line,
            col: tok.col,
        })
    }

    fn signature(&self, callee: &Callee) -> (usize, usize) {
        match callee {
            Callee::Builtin(k) => (k.num_params(), k.num_qubits().unwrap_or(0)),
            Callee::User(i) => (self.defs[*i].num_params, self.defs[*i].num_args),
            Callee::Barrier => (0, 0),
        }
    }

    fn check_arity(
        &self,
        tok: &Token<'_>,
        nparams: usize,
        want_params: usize,
        nargs: usize,
        want_args: usize,
    ) -> Result<(), QasmError> {
        if nparams != want_params || nargs != want_args {
            return Err(QasmError::Arity {
                line: tok.line,
                col: tok.col,
                message: format!(
                    "`{}` takes {want_params} parameter(s) and {want_args} qubit(s), got {nparams} and {nargs}",
                    tok.text
                ),
            });
        }
        Ok(())
    }

    fn gate_call(&mut self, name: Token<'a>) -> Result<(), QasmError> {
        let callee = self.resolve(&name, name.text)?;
        let params: Vec<f64> = if self.peek_is("(")? {
            self.next()?;
            self.expr_list(&[])?.iter().map(|e| e.eval(&[])).collect()
        } else {
            Vec::new()
        };
        let operands = self.operand_list()?;
        self.expect(";")?;
        let (np, na) = self.signature(&callee);
        self.check_arity(&name, params.len(), np, operands.len(), na)?;

        let mut width = None;
        for op in &operands {
            if let Operand::Register { width: w, .. } = op {
                match width {
                    None => width = Some(*w),
                    Some(prev) if prev != *w => return Err(syntax(&name, "register operands have different widths")),
                    _ => {}
                }
            }
        }
        let mut qubits: Vec<Qubit> = Vec::with_capacity(operands.len());
        for i in 0..width.unwrap_or(1) {
            qubits.clear();
            for op in &operands {
                let q = match *op {
                    Operand::Bit(q) => q,
                    Operand::Register { base, .. } => base + i,
                };
                if qubits.contains(&(q as Qubit)) {
                    return Err(syntax(&name, format!("qubit {q} used twice in `{}`", name.text)));
                }
                qubits.push(q as Qubit);
            }
            match callee {
                Callee::Builtin(kind) => self.gates.push(Gate::raw(kind, &qubits, &params)),
                Callee::User(def) => inline(&self.defs, def, &params, &qubits, &mut self.gates),
                Callee::Barrier => unreachable!("barrier is a keyword"),
            }
        }
        Ok(())
    }

    fn expr_list(&mut self, params: &[&str]) -> Result<Vec<Expr>, QasmError> {
        let mut out = Vec::new();
        if self.peek_is(")")? {
            self.next()?;
            return Ok(out);
        }
        loop {
            out.push(self.expr(params)?.fold());
            let tok = self.next()?;
            match tok.text {
                "," if tok.kind == TokenKind::Symbol => continue,
                ")" if tok.kind == TokenKind::Symbol => break,
                _ => return Err(syntax(&tok, format!("expected `,` or `)`, found `{}`", tok.text))),
            }
        }
        Ok(out)
    }

    fn expr(&mut self, params: &[&str]) -> Result<Expr, QasmError> {
        let mut lhs = self.term(params)?;
        loop {
            let op = match self.peek()? {
                Some(t) if t.kind == TokenKind::Symbol && t.text == "+" => BinOp::Add,
                Some(t) if t.kind == TokenKind::Symbol && t.text == "-" => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.next()?;
            let rhs = self.term(params)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self, params: &[&str]) -> Result<Expr, QasmError> {
        let mut lhs = self.unary(params)?;
        loop {
            let op = match self.peek()? {
                Some(t) if t.kind == TokenKind::Symbol && t.text == "*" => BinOp::Mul,
                Some(t) if t.kind == TokenKind::Symbol && t.text == "/" => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.next()?;
            let rhs = self.unary(params)?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self, params: &[&str]) -> Result<Expr, QasmError> {
        if self.peek_is("-")? {
            self.next()?;
            return Ok(Expr::Neg(Box::new(self.unary(params)?)));
        }
        if self.peek_is("+")? {
            self.next()?;
            return self.unary(params);
        }
        let base = self.atom(params)?;
        if self.peek_is("^")? {
            self.next()?;
            let exp = self.unary(params)?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self, params: &[&str]) -> Result<Expr, QasmError> {
        let tok = self.next()?;
        match tok.kind {
            TokenKind::Number => tok
                .text
                .parse()
                .map(Expr::Num)
                .map_err(|_| syntax(&tok, format!("bad number `{}`", tok.text))),
            TokenKind::Identifier if tok.text == "pi" => Ok(Expr::Num(PI)),
            TokenKind::Identifier => {
                if let Some(i) = params.iter().position(|p| *p == tok.text) {
                    return Ok(Expr::Param(i));
                }
                if let Some(f) = Func::from_name(tok.text) {
                    self.expect("(")?;
                    let arg = self.expr(params)?;
                    self.expect(")")?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                Err(syntax(&tok, format!("unknown identifier `{}` in expression", tok.text)))
            }
            TokenKind::Symbol if tok.text == "(" => {
                let e = self.expr(params)?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(syntax(&tok, format!("unexpected `{}` in expression", tok.text))),
        }
    }
}

fn inline(defs: &[GateDef], def: usize, params: &[f64], qubits: &[Qubit], out: &mut Vec<Gate>) {
    let mut local: Vec<Qubit> = Vec::with_capacity(4);
    for op in &defs[def].body {
        local.clear();
        local.extend(op.args.iter().map(|&a| qubits[a]));
        match op.callee {
            Callee::Barrier => out.push(Gate::barrier(&local)),
            Callee::Builtin(kind) => {
                let values: Vec<f64> = op.params.iter().map(|e| e.eval(params)).collect();
                out.push(Gate::raw(kind, &local, &values));
            }
            Callee::User(inner) => {
                let values: Vec<f64> = op.params.iter().map(|e| e.eval(params)).collect();
                let local = local.clone();
                inline(defs, inner, &values, &local, out);
            }
        }
    }
}
