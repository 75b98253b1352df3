use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{JoinSemilatticeSemigroup, Term};
use crate::error::{Error, Result};

/// First-order formulas over `<=` atoms, with quantifiers ranging over the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Le(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(u32, Box<Formula>),
    Exists(u32, Box<Formula>),
}

impl Formula {
    pub fn le(s: Term, t: Term) -> Formula {
        Formula::Le(s, t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; the empty conjunction is `true` and a singleton is its member.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::True,
            1 => fs.pop().unwrap(),
            _ => Formula::And(fs),
        }
    }

    /// Disjunction; the empty disjunction is `false` and a singleton is its member.
    pub fn or(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => Formula::False,
            1 => fs.pop().unwrap(),
            _ => Formula::Or(fs),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: u32, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: u32, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    /// Number of nodes in the syntax tree, terms excluded.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Le(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Implies(..) => 1,
            Formula::Or(_) => 2,
            Formula::And(_) => 3,
            Formula::Not(_) => 4,
            Formula::True | Formula::False | Formula::Le(..) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Le(s, t) => write!(f, "{s} <= {t}"),
            Formula::Not(g) => {
                f.write_str("~")?;
                write_child(f, g, 4)
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let (sep, prec) = if matches!(self, Formula::And(_)) { (" & ", 4) } else { (" | ", 3) };
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write_child(f, g, prec)?;
                }
                Ok(())
            }
            Formula::Implies(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(" -> ")?;
                write_child(f, b, 1)
            }
            Formula::Forall(v, g) => write!(f, "forall v{v}. {g}"),
            Formula::Exists(v, g) => write!(f, "exists v{v}. {g}"),
        }
    }
}

/// Truth of a closed formula in `alg`.
pub fn eval_formula(f: &Formula, alg: &JoinSemilatticeSemigroup) -> Result<bool> {
    let mut env = Vec::new();
    eval(f, alg, &mut env)
}

fn eval(f: &Formula, alg: &JoinSemilatticeSemigroup, env: &mut Vec<Option<usize>>) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Le(s, t) => {
            let lookup = |i: u32| env.get(i as usize).copied().flatten();
            alg.leq(s.eval_with(alg, &lookup)?, t.eval_with(alg, &lookup)?)
        }
        Formula::Not(g) => !eval(g, alg, env)?,
        Formula::And(gs) => {
            for g in gs {
                if !eval(g, alg, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if eval(g, alg, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval(a, alg, env)? || eval(b, alg, env)?,
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(f, Formula::Forall(..));
            let i = *v as usize;
            if env.len() <= i {
                env.resize(i + 1, None);
            }
            let saved = env[i];
            let mut result = universal;
            for a in 0..alg.size() {
                env[i] = Some(a);
                if eval(g, alg, env)? != universal {
                    result = !universal;
                    break;
                }
            }
            env[i] = saved;
            result
        }
    })
}

/// Parses the syntax produced by the `Display` implementation.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::FormulaSyntax { pos: self.pos, msg: String::from(msg) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    /// Consumes a keyword only when it is not the prefix of a longer word.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        if self.src[self.pos..].starts_with(word.as_bytes())
            && self.src.get(end).is_none_or(|c| !c.is_ascii_alphanumeric() && *c != b'_')
        {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        for (word, universal) in [("forall", true), ("exists", false)] {
            if self.eat_word(word) {
                let v = self.var()?;
                self.expect(".")?;
                let body = self.formula()?;
                return Ok(if universal { Formula::forall(v, body) } else { Formula::exists(v, body) });
            }
        }
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        while self.eat("|") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while self.eat("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat_word("true") {
            return Ok(Formula::True);
        }
        if self.eat_word("false") {
            return Ok(Formula::False);
        }
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'(') {
            // Either a parenthesised formula or an atom whose left term is parenthesised.
            let start = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.eat(")") {
                    return Ok(f);
                }
            }
            self.pos = start;
        }
        if self.src[self.pos..].starts_with(b"forall") || self.src[self.pos..].starts_with(b"exists") {
            return self.formula();
        }
        let s = self.term()?;
        self.expect("<=")?;
        let t = self.term()?;
        Ok(Formula::le(s, t))
    }

    fn var(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b'v') {
            return Err(self.error("expected a variable"));
        }
        let start = self.pos + 1;
        let mut end = start;
        while end < self.src.len() && self.src[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(self.error("expected a variable number"));
        }
        let digits = core::str::from_utf8(&self.src[start..end]).expect("ascii digits");
        let v = digits.parse().map_err(|_| self.error("variable number out of range"))?;
        self.pos = end;
        Ok(v)
    }

    fn term(&mut self) -> Result<Term> {
        if self.eat("(") {
            let a = self.term()?;
            let plus = if self.eat("+") {
                true
            } else if self.eat(";") {
                false
            } else {
                return Err(self.error("expected `+` or `;`"));
            };
            let b = self.term()?;
            self.expect(")")?;
            return Ok(if plus { Term::plus(a, b) } else { Term::semi(a, b) });
        }
        Ok(Term::var(self.var()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    fn v(i: u32) -> Term {
        Term::var(i)
    }

    #[test]
    fn not_e_le_e_is_false() {
        let f = Formula::forall(0, Formula::not(Formula::le(v(0), v(0))));
        assert!(!eval_formula(&f, &fixtures::one_element_jsl()).unwrap());
    }

    #[test]
    fn unbound_variable() {
        let f = Formula::le(v(0), v(3));
        assert_eq!(eval_formula(&Formula::forall(0, f), &fixtures::one_element_jsl()), Err(Error::UnboundVariable(3)));
    }

    #[test]
    fn quantifiers() {
        let alg = fixtures::two_chain_max_jsl();
        // Some element is below every element; not every element is.
        let bottom = Formula::exists(0, Formula::forall(1, Formula::le(v(0), v(1))));
        assert!(eval_formula(&bottom, &alg).unwrap());
        let all_bottom = Formula::forall(0, Formula::forall(1, Formula::le(v(0), v(1))));
        assert!(!eval_formula(&all_bottom, &alg).unwrap());
        let sum = Formula::forall(0, Formula::forall(1, Formula::le(v(0), Term::plus(v(0), v(1)))));
        assert!(eval_formula(&sum, &alg).unwrap());
    }

    #[test]
    fn print_and_parse_round_trip() {
        let f = Formula::forall(
            0,
            Formula::forall(
                1,
                Formula::implies(
                    Formula::not(Formula::le(v(0), v(1))),
                    Formula::and(vec![
                        Formula::or(vec![Formula::le(Term::semi(v(0), v(1)), v(2)), Formula::True]),
                        Formula::not(Formula::And(vec![Formula::False, Formula::le(v(1), Term::plus(v(0), v(1)))])),
                        Formula::implies(Formula::implies(Formula::True, Formula::False), Formula::False),
                    ]),
                ),
            ),
        );
        let text = format!("{f}");
        assert_eq!(parse_formula(&text).unwrap(), f);
        assert_eq!(
            text,
            "forall v0. forall v1. ~v0 <= v1 -> ((v0 ; v1) <= v2 | true) & ~(false & v1 <= (v0 + v1)) & ((true -> false) -> false)"
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse_formula("v0 <="), Err(Error::FormulaSyntax { .. })));
        assert!(matches!(parse_formula("v0 <= v1 v2"), Err(Error::FormulaSyntax { pos: 9, .. })));
        assert!(matches!(parse_formula("(v0 * v1) <= v1"), Err(Error::FormulaSyntax { .. })));
    }

    #[test]
    fn nested_quantifier_restores_binding() {
        let alg = fixtures::two_chain_max_jsl();
        // forall v0. (exists v0. v0 <= v0) & v0 <= v0 uses the outer v0 after the inner scope.
        let f = Formula::forall(
            0,
            Formula::and(vec![Formula::exists(0, Formula::le(v(0), v(0))), Formula::le(v(0), v(0))]),
        );
        assert!(eval_formula(&f, &alg).unwrap());
    }
}
