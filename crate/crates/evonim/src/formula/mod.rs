//! Expression trees over a small integer primitive set.
//!
//! A formula is a rooted tree whose internal nodes apply primitives and whose
//! leaves are input variables or small integer constants. Every primitive is
//! total ("protected"): division and modulus by zero, the logarithm at zero,
//! and the bitwise complement all have fixed conventions, so evaluation never
//! faults and fitness is reproducible bit for bit. Arithmetic that would leave
//! the signed 64-bit range signals an overflow carrying the offending node's
//! pre-order index instead of wrapping.

mod parse;
mod random;

pub use parse::{parse, ParseError, ParseErrorKind};
pub use random::{random_leaf, random_tree, TreeMethod};

use std::fmt;

/// Leaf constants are drawn from `0..=CONSTANT_POOL_MAX`.
pub const CONSTANT_POOL_MAX: i64 = 10;

/// Hard tree-depth bound enforced by the variation operators.
pub const DEFAULT_MAX_DEPTH: usize = 17;

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

/// The closed set of functions formulas are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    Xor,
    And,
    Or,
    Not,
    Mod,
    Log2,
    Plus1,
    Equal,
    Less,
    Greater,
    Sub,
    Add,
    Times,
    Divide,
}

impl Primitive {
    pub const ALL: [Primitive; 14] = [
        Primitive::Xor,
        Primitive::And,
        Primitive::Or,
        Primitive::Not,
        Primitive::Mod,
        Primitive::Log2,
        Primitive::Plus1,
        Primitive::Equal,
        Primitive::Less,
        Primitive::Greater,
        Primitive::Sub,
        Primitive::Add,
        Primitive::Times,
        Primitive::Divide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Xor => "XOR",
            Primitive::And => "AND",
            Primitive::Or => "OR",
            Primitive::Not => "NOT",
            Primitive::Mod => "MOD",
            Primitive::Log2 => "LOG2",
            Primitive::Plus1 => "PLUS1",
            Primitive::Equal => "EQUAL",
            Primitive::Less => "LESS",
            Primitive::Greater => "GREATER",
            Primitive::Sub => "SUB",
            Primitive::Add => "ADD",
            Primitive::Times => "TIMES",
            Primitive::Divide => "DIVIDE",
        }
    }

    pub fn from_name(name: &str) -> Option<Primitive> {
        Primitive::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Primitive::Not | Primitive::Log2 | Primitive::Plus1 => 1,
            _ => 2,
        }
    }

    /// Applies the protected semantics. `None` means the result left the
    /// signed 64-bit range.
    fn apply(self, args: &[i64]) -> Option<i64> {
        let a = args[0];
        match self {
            Primitive::Xor => Some(a ^ args[1]),
            Primitive::And => Some(a & args[1]),
            Primitive::Or => Some(a | args[1]),
            Primitive::Not => {
                // Complement of the low 16 bits of |a|, kept non-negative.
                i64::try_from(a.unsigned_abs() ^ 0xFFFF).ok()
            }
            Primitive::Mod => {
                let b = args[1];
                if b == 0 {
                    Some(0)
                } else {
                    // Non-negative remainder modulo |b|; i128 sidesteps the
                    // i64::MIN corner cases.
                    Some((a as i128).rem_euclid((b as i128).abs()) as i64)
                }
            }
            Primitive::Log2 => {
                if a == 0 {
                    Some(0)
                } else {
                    Some(i64::from(a.unsigned_abs().ilog2()))
                }
            }
            Primitive::Plus1 => a.checked_add(1),
            Primitive::Equal => Some(i64::from(a == args[1])),
            Primitive::Less => Some(i64::from(a < args[1])),
            Primitive::Greater => Some(i64::from(a > args[1])),
            Primitive::Sub => a.checked_sub(args[1]),
            Primitive::Add => a.checked_add(args[1]),
            Primitive::Times => a.checked_mul(args[1]),
            Primitive::Divide => {
                let b = args[1];
                if b == 0 {
                    Some(1)
                } else {
                    a.checked_div(b) // truncated; None only for MIN / -1
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

/// An ordered list of input names binding variable indices to dataset columns.
///
/// Width-1 datasets use `h`; multi-heap datasets use `h1..hk`; count-primed
/// datasets prepend `nh` (the number of heaps) as column 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn single() -> Vars {
        Vars { names: vec!["h".to_string()] }
    }

    pub fn heaps(k: usize) -> Vars {
        assert!(k >= 1, "at least one heap variable is required");
        Vars { names: (1..=k).map(|i| format!("h{i}")).collect() }
    }

    pub fn count_primed(k: usize) -> Vars {
        assert!(k >= 1, "at least one heap variable is required");
        let mut names = vec!["nh".to_string()];
        names.extend((1..=k).map(|i| format!("h{i}")));
        Vars { names }
    }

    /// Builds a variable space from explicit names. Names must be distinct,
    /// non-empty identifiers that do not collide with primitive names.
    pub fn from_names<I, S>(names: I) -> Result<Vars, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err("a variable space needs at least one name".to_string());
        }
        for name in &names {
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(format!("invalid variable name {name:?}"));
            }
            if Primitive::from_name(name).is_some() {
                return Err(format!("variable name {name:?} collides with a primitive"));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(format!("duplicate variable name {name:?}"));
            }
        }
        Ok(Vars { names })
    }

    pub fn width(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

// ---------------------------------------------------------------------------
// Expression trees
// ---------------------------------------------------------------------------

/// An expression tree. Children always match the primitive's arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Prim(Primitive, Vec<Expr>),
    Var(usize),
    Const(i64),
}

impl Expr {
    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Prim(_, children) => 1 + children.iter().map(Expr::size).sum::<usize>(),
            _ => 1,
        }
    }

    /// Depth of the tree in edges; a bare leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Prim(_, children) => {
                1 + children.iter().map(Expr::depth).max().unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// Returns the subtree at `index` in pre-order, if it exists.
    pub fn get(&self, index: usize) -> Option<&Expr> {
        fn walk<'a>(expr: &'a Expr, index: usize, counter: &mut usize) -> Option<&'a Expr> {
            if *counter == index {
                return Some(expr);
            }
            *counter += 1;
            if let Expr::Prim(_, children) = expr {
                for child in children {
                    if let Some(found) = walk(child, index, counter) {
                        return Some(found);
                    }
                }
            }
            None
        }
        let mut counter = 0;
        walk(self, index, &mut counter)
    }

    /// Returns a copy of the tree with the pre-order node `index` replaced.
    /// Out-of-range indices leave the tree unchanged.
    pub fn replaced(&self, index: usize, replacement: &Expr) -> Expr {
        fn walk(expr: &Expr, index: usize, counter: &mut usize, replacement: &Expr) -> Expr {
            if *counter == index {
                *counter += 1;
                return replacement.clone();
            }
            *counter += 1;
            match expr {
                Expr::Prim(p, children) => Expr::Prim(
                    *p,
                    children
                        .iter()
                        .map(|c| walk(c, index, counter, replacement))
                        .collect(),
                ),
                other => other.clone(),
            }
        }
        let mut counter = 0;
        walk(self, index, &mut counter, replacement)
    }

    /// Largest variable index used by the tree, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Prim(_, children) => children.iter().filter_map(Expr::max_var).max(),
        }
    }

    pub fn contains_primitive(&self, prim: Primitive) -> bool {
        match self {
            Expr::Prim(p, children) => {
                *p == prim || children.iter().any(|c| c.contains_primitive(prim))
            }
            _ => false,
        }
    }

    /// Renders the tree in canonical call syntax against a variable space.
    pub fn display<'a>(&'a self, vars: &'a Vars) -> DisplayExpr<'a> {
        DisplayExpr { expr: self, vars }
    }
}

/// [`fmt::Display`] adapter pairing an expression with its variable names.
pub struct DisplayExpr<'a> {
    expr: &'a Expr,
    vars: &'a Vars,
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_expr(expr: &Expr, vars: &Vars, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match expr {
                Expr::Const(c) => write!(f, "{c}"),
                Expr::Var(i) => write!(f, "{}", vars.name(*i)),
                Expr::Prim(p, children) => {
                    write!(f, "{}(", p.name())?;
                    for (k, child) in children.iter().enumerate() {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        write_expr(child, vars, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        write_expr(self.expr, self.vars, f)
    }
}

/// Renders a formula as text. `parse(print(e)) == e` for every tree.
pub fn print(expr: &Expr, vars: &Vars) -> String {
    expr.display(vars).to_string()
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluation left the signed 64-bit range at the given pre-order node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("arithmetic overflow at node {node}")]
pub struct EvalOverflow {
    pub node: usize,
}

/// Evaluates a formula on one input vector.
///
/// Every variable index in `expr` must be within `inputs` — the caller binds
/// formulas to a dataset of matching width before evaluating.
pub fn eval(expr: &Expr, inputs: &[i64]) -> Result<i64, EvalOverflow> {
    fn walk(expr: &Expr, inputs: &[i64], counter: &mut usize) -> Result<i64, EvalOverflow> {
        let node = *counter;
        *counter += 1;
        match expr {
            Expr::Const(c) => Ok(*c),
            Expr::Var(i) => Ok(inputs[*i]),
            Expr::Prim(p, children) => {
                let mut args = [0i64; 2];
                for (k, child) in children.iter().enumerate() {
                    args[k] = walk(child, inputs, counter)?;
                }
                p.apply(&args[..children.len()])
                    .ok_or(EvalOverflow { node })
            }
        }
    }
    let mut counter = 0;
    walk(expr, inputs, &mut counter)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Vars {
        Vars::single()
    }

    #[test]
    fn protected_semantics() {
        let cases: &[(&str, i64)] = &[
            ("MOD(5,0)", 0),
            ("MOD(SUB(0,7),3)", 2),
            ("MOD(7,SUB(0,3))", 1),
            ("DIVIDE(5,0)", 1),
            ("DIVIDE(7,2)", 3),
            ("DIVIDE(SUB(0,7),2)", -3),
            ("LOG2(0)", 0),
            ("LOG2(1)", 0),
            ("LOG2(SUB(0,8))", 3),
            ("NOT(0)", 0xFFFF),
            ("NOT(SUB(0,5))", 5 ^ 0xFFFF),
            ("EQUAL(3,3)", 1),
            ("LESS(3,3)", 0),
            ("GREATER(4,3)", 1),
            ("XOR(5,3)", 6),
            ("PLUS1(10)", 11),
        ];
        for (text, expected) in cases {
            let expr = parse(text, &h()).unwrap();
            assert_eq!(eval(&expr, &[0]).unwrap(), *expected, "{text}");
        }
    }

    #[test]
    fn variable_spaces_are_validated() {
        assert!(Vars::from_names(Vec::<String>::new()).is_err());
        assert!(Vars::from_names(["h", "h"]).is_err());
        assert!(Vars::from_names(["MOD"]).is_err());
        assert!(Vars::from_names(["2x"]).is_err());
        assert!(Vars::from_names(["nh", "h1"]).is_ok());
    }

    #[test]
    fn ga2_single_heap_form_evaluates() {
        let expr = parse("MOD(SUB(h,1),PLUS1(PLUS1(1)))", &h()).unwrap();
        assert_eq!(eval(&expr, &[5]).unwrap(), 1);
        assert_eq!(eval(&expr, &[1]).unwrap(), 0);
        assert_eq!(eval(&expr, &[9]).unwrap(), 2);
    }

    #[test]
    fn three_heap_form_evaluates() {
        let vars = Vars::heaps(3);
        let expr = parse("MOD(ADD(ADD(h3, h1), h2), ADD(3, SUB(0, 0)))", &vars).unwrap();
        assert_eq!(eval(&expr, &[1, 1, 1]).unwrap(), 0);
        assert_eq!(eval(&expr, &[2, 3, 4]).unwrap(), 0);
        assert_eq!(eval(&expr, &[1, 1, 2]).unwrap(), 1);
    }

    #[test]
    fn overflow_reports_preorder_node() {
        // ADD is node 0; TIMES is node 1; the overflow happens at TIMES.
        let expr = parse(
            "ADD(TIMES(TIMES(1000000000,1000000000),TIMES(1000000000,1000000000)),1)",
            &h(),
        )
        .unwrap();
        let err = eval(&expr, &[0]).unwrap_err();
        assert_eq!(err.node, 1);
    }

    #[test]
    fn preorder_indexing_round_trips() {
        let vars = Vars::heaps(2);
        let expr = parse("ADD(XOR(h1,h2),PLUS1(h1))", &vars).unwrap();
        assert_eq!(expr.size(), 6);
        assert_eq!(expr.depth(), 2);
        assert_eq!(print(expr.get(1).unwrap(), &vars), "XOR(h1,h2)");
        assert_eq!(print(expr.get(4).unwrap(), &vars), "PLUS1(h1)");
        let swapped = expr.replaced(1, &Expr::Const(7));
        assert_eq!(print(&swapped, &vars), "ADD(7,PLUS1(h1))");
        // Out-of-range replacement leaves the tree unchanged.
        assert_eq!(expr.replaced(99, &Expr::Const(7)), expr);
    }

    #[test]
    fn var_bounds_and_not_detection() {
        let vars = Vars::count_primed(3);
        assert_eq!(vars.width(), 4);
        assert_eq!(vars.name(0), "nh");
        assert_eq!(vars.index_of("h3"), Some(3));
        let expr = parse("ADD(nh,NOT(h2))", &vars).unwrap();
        assert_eq!(expr.max_var(), Some(2));
        assert!(expr.contains_primitive(Primitive::Not));
        assert!(!expr.contains_primitive(Primitive::Mod));
    }
}
