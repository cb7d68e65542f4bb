//! Surface syntax for algebra elements: a tokenizer, a recursive-descent
//! parser, and a canonical printer satisfying `parse ∘ print = identity`.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr      := ['-'] term (('+' | '-') term)*
//! term      := factor (('*' | '/') factor)*
//! factor    := atom ['^' ['-'] integer]
//! atom      := generator | parameter | integer | '(' expr ')'
//! generator := ('e' | 'f' | 'w' | 'wp') index
//!            | ('w' | 'wp') '[' int (',' int)* ']'
//! parameter := 'r' | 's' | 'rp' | 'q'
//! ```
//!
//! `e`/`f` atoms take nonnegative exponents (repetition); `w`/`wp` atoms
//! take any integer exponent, folded into the group-like's weight, and the
//! bracket form names a group-like of an arbitrary root-lattice weight.
//! Scalar subexpressions admit any integer exponent; `/` requires a
//! nonzero scalar divisor.

use std::fmt;

use num::{BigInt, ToPrimitive};
use tpqg_core::cartan::Weight;
use tpqg_core::freealg::{Element, Generator, Word};
use tpqg_core::scalars::{Rational, Scalar, Var};
use tpqg_core::urs::UrsAlgebra;

/// A syntax or validation error, carrying the byte offset where it was
/// detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: BigInt = text[i..j].parse().expect("digit run");
                i = j;
                out.push((start, Tok::Int(n)));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word = text[i..j].to_string();
                i = j;
                out.push((start, Tok::Ident(word)));
                continue;
            }
            other => return err(start, format!("unexpected character '{other}'")),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// A parsed atom before exponentiation: generator atoms keep their identity
/// so that exponents can be folded in structurally.
enum Atom {
    Raising(usize),
    Lowering(usize),
    GroupLike { primed: bool, weight: Weight },
    Elem(Element),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    alg: &'a UrsAlgebra,
}

/// The coefficient of the empty word, when the element is a pure scalar.
fn as_scalar(x: &Element) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let mut it = x.terms();
    let (w, c) = it.next()?;
    if it.next().is_some() || !w.is_empty() {
        return None;
    }
    Some(c.clone())
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(t) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let rhs = self.factor()?;
                    let Some(sc) = as_scalar(&rhs) else {
                        return err(pos, "division requires a scalar divisor");
                    };
                    if sc.is_zero() {
                        return err(pos, "division by zero");
                    }
                    acc = acc.scale(&sc.inv().expect("nonzero scalar"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let atom_pos = self.pos();
        let atom = self.atom()?;
        let exponent = if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.at += 1;
                true
            } else {
                false
            };
            let pos = self.pos();
            let Some(Tok::Int(n)) = self.bump() else {
                return err(pos, "expected an integer exponent after '^'");
            };
            let Some(mut k) = n.to_i64() else {
                return err(pos, "exponent out of range");
            };
            if neg {
                k = -k;
            }
            Some((pos, k))
        } else {
            None
        };
        match atom {
            Atom::Raising(i) | Atom::Lowering(i) => {
                let raise = matches!(atom, Atom::Raising(_));
                let k = match exponent {
                    None => 1,
                    Some((pos, k)) if k < 0 => {
                        let family = if raise { "e" } else { "f" };
                        return err(
                            pos,
                            format!("exponent on {family}{i} must be nonnegative"),
                        );
                    }
                    Some((_, k)) => k,
                };
                let gen = if raise {
                    Generator::E(i)
                } else {
                    Generator::F(i)
                };
                Ok(Element::from_word(Word::new(vec![gen; k as usize])))
            }
            Atom::GroupLike { primed, weight } => {
                let k = exponent.map(|(_, k)| k).unwrap_or(1);
                let mu = weight.scaled(k);
                let gen = if primed {
                    Generator::OmegaPrime(mu)
                } else {
                    Generator::Omega(mu)
                };
                Ok(Element::from_word(Word::single(gen)))
            }
            Atom::Elem(x) => match exponent {
                None => Ok(x),
                Some((pos, k)) => {
                    if let Some(sc) = as_scalar(&x) {
                        let Ok(k32) = i32::try_from(k) else {
                            return err(pos, "exponent out of range");
                        };
                        match sc.powi(k32) {
                            Ok(p) => Ok(Element::from_scalar(p)),
                            Err(_) => err(pos, "negative power of zero"),
                        }
                    } else if k >= 0 {
                        let mut acc = Element::one();
                        for _ in 0..k {
                            acc = acc.mul(&x);
                        }
                        Ok(acc)
                    } else {
                        err(atom_pos, "cannot invert a non-scalar element")
                    }
                }
            },
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Atom::Elem(Element::from_scalar(Scalar::from_rational(
                Rational::from_integer(n),
            )))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Atom::Elem(inner))
            }
            Some(Tok::Ident(id)) => self.ident_atom(pos, &id),
            Some(other) => err(pos, format!("unexpected token {other:?}")),
            None => err(pos, "unexpected end of input"),
        }
    }

    fn ident_atom(&mut self, pos: usize, id: &str) -> Result<Atom, ParseError> {
        let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
        let (family, digits) = id.split_at(split);
        if digits.is_empty() {
            if let Some(v) = Var::from_name(family) {
                return Ok(Atom::Elem(Element::from_scalar(Scalar::var(v))));
            }
            if family == "w" || family == "wp" {
                if self.peek() == Some(&Tok::LBracket) {
                    let weight = self.bracket_weight()?;
                    return Ok(Atom::GroupLike {
                        primed: family == "wp",
                        weight,
                    });
                }
                return err(
                    self.pos(),
                    format!("expected a node index or '[' after '{family}'"),
                );
            }
            return err(pos, format!("unknown symbol '{id}'"));
        }
        let Ok(i) = digits.parse::<usize>() else {
            return err(pos, format!("bad index in '{id}'"));
        };
        let rank = self.alg.rank();
        if i < 1 || i > rank {
            return err(
                pos,
                format!("index out of range: '{id}' in a rank-{rank} algebra"),
            );
        }
        match family {
            "e" => Ok(Atom::Raising(i)),
            "f" => Ok(Atom::Lowering(i)),
            "w" => Ok(Atom::GroupLike {
                primed: false,
                weight: Weight::simple(rank, i),
            }),
            "wp" => Ok(Atom::GroupLike {
                primed: true,
                weight: Weight::simple(rank, i),
            }),
            _ => err(pos, format!("unknown symbol '{id}'")),
        }
    }

    fn bracket_weight(&mut self) -> Result<Weight, ParseError> {
        self.expect(&Tok::LBracket, "'['")?;
        let mut coords = Vec::new();
        loop {
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.at += 1;
                true
            } else {
                false
            };
            let pos = self.pos();
            let Some(Tok::Int(n)) = self.bump() else {
                return err(pos, "expected an integer weight coordinate");
            };
            let Some(mut c) = n.to_i64() else {
                return err(pos, "weight coordinate out of range");
            };
            if neg {
                c = -c;
            }
            coords.push(c);
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => return err(self.pos(), "expected ',' or ']'"),
            }
        }
        let rank = self.alg.rank();
        if coords.len() != rank {
            return err(
                self.pos(),
                format!(
                    "weight has {} coordinates but the algebra has rank {rank}",
                    coords.len()
                ),
            );
        }
        Ok(Weight(coords))
    }
}

/// Parses an element expression against the given algebra (the algebra
/// supplies the rank for index validation).
pub fn parse_element(text: &str, alg: &UrsAlgebra) -> Result<Element, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        alg,
    };
    let x = p.expr()?;
    if p.at != p.toks.len() {
        return err(p.pos(), "trailing input after expression");
    }
    Ok(x)
}

fn print_group_like(out: &mut String, primed: bool, mu: &Weight) {
    let tag = if primed { "wp" } else { "w" };
    let nonzero: Vec<(usize, i64)> = mu
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k + 1, c))
        .collect();
    match nonzero.as_slice() {
        [(i, 1)] => out.push_str(&format!("{tag}{i}")),
        [(i, c)] => out.push_str(&format!("{tag}{i}^{c}")),
        _ => {
            out.push_str(tag);
            out.push('[');
            for (k, c) in mu.0.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&c.to_string());
            }
            out.push(']');
        }
    }
}

fn print_word(w: &Word) -> String {
    let mut out = String::new();
    let gens = w.gens();
    let mut k = 0;
    while k < gens.len() {
        if !out.is_empty() {
            out.push('*');
        }
        match &gens[k] {
            Generator::E(i) | Generator::F(i) => {
                let mut run = 1;
                while k + run < gens.len() && gens[k + run] == gens[k] {
                    run += 1;
                }
                let tag = if matches!(gens[k], Generator::E(_)) {
                    "e"
                } else {
                    "f"
                };
                if run == 1 {
                    out.push_str(&format!("{tag}{i}"));
                } else {
                    out.push_str(&format!("{tag}{i}^{run}"));
                }
                k += run;
            }
            Generator::Omega(mu) => {
                print_group_like(&mut out, false, mu);
                k += 1;
            }
            Generator::OmegaPrime(mu) => {
                print_group_like(&mut out, true, mu);
                k += 1;
            }
        }
    }
    out
}

/// Prints an element in the canonical surface syntax.  The output always
/// re-parses to an equal element, and printing is idempotent under
/// `parse ∘ print`.
pub fn print_element(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut pieces = Vec::new();
    for (w, c) in x.terms() {
        let piece = match (c.is_one(), w.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => print_word(w),
            (false, true) => format!("({c})"),
            (false, false) => format!("({c})*{}", print_word(w)),
        };
        pieces.push(piece);
    }
    pieces.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use tpqg_core::cartan::CartanDatum;

    fn a2() -> UrsAlgebra {
        UrsAlgebra::new(CartanDatum::named("A2").unwrap())
    }

    #[test]
    fn quantum_commutator_expression_is_pinned() {
        let alg = a2();
        let x = parse_element("e1*e2 - (r+s)*e2*e1", &alg).unwrap();
        let r = Scalar::var(Var::R);
        let s = Scalar::var(Var::S);
        let mut expected = Element::from_word(Word::new(vec![Generator::E(1), Generator::E(2)]));
        expected = expected.sub(
            &Element::from_word(Word::new(vec![Generator::E(2), Generator::E(1)]))
                .scale(&r.add(&s)),
        );
        assert_eq!(x, expected);
    }

    #[test]
    fn group_like_powers_fold_into_the_weight() {
        let alg = a2();
        let x = parse_element("w1^-2 * e2", &alg).unwrap();
        let expected = Element::from_word(Word::new(vec![
            Generator::Omega(Weight(vec![-2, 0])),
            Generator::E(2),
        ]));
        assert_eq!(x, expected);
        let y = parse_element("wp[1,-2]^2", &alg).unwrap();
        assert_eq!(
            y,
            Element::from_word(Word::single(Generator::OmegaPrime(Weight(vec![2, -4]))))
        );
    }

    #[test]
    fn out_of_range_indices_are_rejected_with_a_position() {
        let alg = a2();
        let e = parse_element("e1*e3", &alg).unwrap_err();
        assert!(e.msg.contains("index out of range"), "{e}");
        assert_eq!(e.pos, 3);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let alg = a2();
        let e = parse_element("e1 + * e2", &alg).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_element("e1^-2", &alg).unwrap_err();
        assert!(e.msg.contains("nonnegative"), "{e}");
        let e = parse_element("(r+s", &alg).unwrap_err();
        assert!(e.msg.contains("')'"), "{e}");
        let e = parse_element("zq1", &alg).unwrap_err();
        assert!(e.msg.contains("unknown symbol"), "{e}");
        let e = parse_element("e1 e2", &alg).unwrap_err();
        assert!(e.msg.contains("trailing"), "{e}");
    }

    #[test]
    fn scalar_arithmetic_parses_exactly() {
        let alg = a2();
        let r = Scalar::var(Var::R);
        let s = Scalar::var(Var::S);
        let x = parse_element("3/2", &alg).unwrap();
        assert_eq!(
            x,
            Element::from_scalar(Scalar::from_rational(Rational::new(3.into(), 2.into())))
        );
        let y = parse_element("(1)/(r - s)", &alg).unwrap();
        assert_eq!(
            y,
            Element::from_scalar(r.sub(&s).inv().unwrap())
        );
        let z = parse_element("(r*s^-1 + 1)^2", &alg).unwrap();
        let base = r.mul(&s.inv().unwrap()).add(&Scalar::one());
        assert_eq!(z, Element::from_scalar(base.mul(&base)));
        let neg = parse_element("-e1 + e1", &alg).unwrap();
        assert!(neg.is_zero());
    }

    #[test]
    fn whitespace_is_insignificant() {
        let alg = a2();
        assert_eq!(
            parse_element("e1*w2^3*f1", &alg).unwrap(),
            parse_element("  e1 * w2 ^ 3\t* f1 ", &alg).unwrap()
        );
    }

    #[test]
    fn exponent_on_letters_means_repetition() {
        let alg = a2();
        assert_eq!(
            parse_element("e1^3", &alg).unwrap(),
            parse_element("e1*e1*e1", &alg).unwrap()
        );
        assert_eq!(parse_element("f2^0", &alg).unwrap(), Element::one());
        // A parenthesized non-scalar takes nonnegative exponents only.
        assert_eq!(
            parse_element("(e1+e2)^2", &alg).unwrap(),
            parse_element("e1*e1 + e1*e2 + e2*e1 + e2*e2", &alg).unwrap()
        );
        assert!(parse_element("(e1+e2)^-1", &alg).is_err());
    }

    fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> Element {
        let scalars = [
            Scalar::one(),
            Scalar::from_int(-3),
            Scalar::var(Var::R),
            Scalar::var(Var::S).inv().unwrap(),
            Scalar::var(Var::R).add(&Scalar::from_int(2)),
            Scalar::var(Var::R)
                .sub(&Scalar::var(Var::S))
                .inv()
                .unwrap(),
        ];
        let mut x = Element::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let len = rng.gen_range(0..=4);
            let gens = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..=rank);
                    match rng.gen_range(0..4) {
                        0 => Generator::E(i),
                        1 => Generator::F(i),
                        2 => Generator::Omega(
                            Weight::simple(rank, i).scaled(rng.gen_range(-2..=2)),
                        ),
                        _ => {
                            let mut mu = Weight::simple(rank, i).scaled(rng.gen_range(-2..=2));
                            if rng.gen_bool(0.3) {
                                let j = rng.gen_range(1..=rank);
                                mu = mu.add(&Weight::simple(rank, j));
                            }
                            Generator::OmegaPrime(mu)
                        }
                    }
                })
                .collect();
            let c = scalars[rng.gen_range(0..scalars.len())].clone();
            x = x.add(&Element::from_word(Word::new(gens)).scale(&c));
        }
        x
    }

    #[test]
    fn printing_then_parsing_is_the_identity() {
        let alg = a2();
        let mut rng = ChaCha8Rng::seed_from_u64(414);
        for _ in 0..200 {
            let x = random_element(&mut rng, 2);
            let text = print_element(&x);
            let back = parse_element(&text, &alg)
                .unwrap_or_else(|e| panic!("failed to re-parse '{text}': {e}"));
            assert_eq!(back, x, "round trip through '{text}'");
        }
    }

    #[test]
    fn parsing_then_printing_is_idempotent() {
        let alg = a2();
        for text in [
            "e1*e2 - (r+s)*e2*e1",
            "w1^-2 * e2",
            "  f1 * wp[0,1] + 3/2",
            "(1)/(r - s) * e1^2",
            "0",
            "1",
            "w1*w1",
        ] {
            let p1 = print_element(&parse_element(text, &alg).unwrap());
            let p2 = print_element(&parse_element(&p1, &alg).unwrap());
            assert_eq!(p1, p2, "printing '{text}' is not stable");
        }
    }

    #[test]
    fn adjacent_equal_group_likes_survive_the_round_trip() {
        let alg = a2();
        // A word with two copies of ω_{α1} is distinct from the single
        // group-like of weight 2α1; the printer must not conflate them.
        let two_copies = parse_element("w1*w1", &alg).unwrap();
        let folded = parse_element("w1^2", &alg).unwrap();
        assert_ne!(two_copies, folded);
        assert_eq!(
            parse_element(&print_element(&two_copies), &alg).unwrap(),
            two_copies
        );
        assert_eq!(
            parse_element(&print_element(&folded), &alg).unwrap(),
            folded
        );
    }
}
