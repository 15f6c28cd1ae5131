//! Textual forms of multivectors and spinors.
//!
//! EFB terms read `[coeff "*"] f1 f2 … fm` where `fi` is one of `qipi`,
//! `piqi`, `pi`, `qi`, every pair appearing once in increasing order, e.g.
//! `3/2 * q1p1 p2 - q1 q2`. Gamma terms read `[coeff "*"] g{i} g{j} …` with
//! strictly increasing indices; a bare coefficient is a scalar.
//!
//! Spinors read `space=<hg>; c*<h> + …` where `<h>` is the h-signature of a
//! basis element of the space, e.g. `space=--; 1*++ - 1/2*-+`.

use std::fmt;
use std::str::FromStr;

use crate::efb::{EfbKey, Factor, Multivector};
use crate::error::{EfbError, Result};
use crate::gamma::{blade_label, gamma_to_efb, GammaMultivector};
use crate::scalar::{Rational, Scalar};
use crate::signature::{AlgebraConfig, Signature};
use crate::spinor::{Spinor, SpinorSpace};

/// Basis an expression is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    #[default]
    Efb,
    Gamma,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Efb => "efb",
            Basis::Gamma => "gamma",
        })
    }
}

impl FromStr for Basis {
    type Err = EfbError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "efb" => Ok(Basis::Efb),
            "gamma" => Ok(Basis::Gamma),
            _ => Err(EfbError::InvalidArgument(format!("unknown basis '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn parse_error(pos: Pos, message: impl Into<String>) -> EfbError {
    EfbError::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Star,
    Plus,
    Minus,
    Atom(char, u32),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut i = 0;
    let advance = |pos: &mut Pos, c: char| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let start = pos;
        if c.is_whitespace() {
            advance(&mut pos, c);
            i += 1;
            continue;
        }
        match c {
            '*' | '+' | '-' => {
                out.push((
                    match c {
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        _ => Tok::Minus,
                    },
                    start,
                ));
                advance(&mut pos, c);
                i += 1;
            }
            '0'..='9' | '.' => {
                let mut lit = String::new();
                while i < chars.len()
                    && (chars[i].is_ascii_digit() || matches!(chars[i], '.' | '/'))
                {
                    lit.push(chars[i]);
                    advance(&mut pos, chars[i]);
                    i += 1;
                }
                out.push((Tok::Num(lit), start));
            }
            'p' | 'q' | 'g' => {
                advance(&mut pos, c);
                i += 1;
                let mut digits = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    digits.push(chars[i]);
                    advance(&mut pos, chars[i]);
                    i += 1;
                }
                let index = digits
                    .parse::<u32>()
                    .map_err(|_| parse_error(start, format!("expected an index after '{c}'")))?;
                out.push((Tok::Atom(c, index), start));
            }
            _ => return Err(parse_error(start, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct RawTerm {
    negative: bool,
    coeff: Option<(String, Pos)>,
    atoms: Vec<(char, u32, Pos)>,
    pos: Pos,
}

fn split_terms(src: &str) -> Result<Vec<RawTerm>> {
    let toks = tokenize(src)?;
    let end = Pos {
        line: src.lines().count().max(1),
        column: src.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    let mut terms = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(parse_error(end, "empty expression"));
    }
    loop {
        let mut negative = false;
        let mut pos = toks.get(i).map_or(end, |t| t.1);
        match toks.get(i) {
            Some((Tok::Plus, _)) => i += 1,
            Some((Tok::Minus, _)) => {
                negative = true;
                i += 1
            }
            _ if !terms.is_empty() => return Err(parse_error(pos, "expected '+' or '-'")),
            _ => {}
        }
        if let Some((_, p)) = toks.get(i) {
            pos = *p;
        }
        let mut coeff = None;
        if let Some((Tok::Num(lit), p)) = toks.get(i) {
            coeff = Some((lit.clone(), *p));
            i += 1;
            if let Some((Tok::Star, p)) = toks.get(i) {
                i += 1;
                if !matches!(toks.get(i), Some((Tok::Atom(..), _))) {
                    return Err(parse_error(
                        toks.get(i).map_or(end, |t| t.1),
                        format!("expected a factor after '*' at column {}", p.column),
                    ));
                }
            }
        }
        let mut atoms = Vec::new();
        while let Some((Tok::Atom(c, idx), p)) = toks.get(i) {
            atoms.push((*c, *idx, *p));
            i += 1;
        }
        if coeff.is_none() && atoms.is_empty() {
            return Err(parse_error(
                toks.get(i).map_or(end, |t| t.1),
                "expected a coefficient or factor",
            ));
        }
        terms.push(RawTerm {
            negative,
            coeff,
            atoms,
            pos,
        });
        if i >= toks.len() {
            break;
        }
    }
    Ok(terms)
}

fn term_coeff<S: Scalar>(term: &RawTerm) -> Result<S> {
    let c = match &term.coeff {
        Some((lit, p)) => S::parse_literal(lit)
            .ok_or_else(|| parse_error(*p, format!("malformed rational '{lit}'")))?,
        None => S::one(),
    };
    Ok(if term.negative { -c } else { c })
}

fn efb_key(term: &RawTerm, m: u32) -> Result<EfbKey> {
    let mut factors: Vec<Option<Factor>> = vec![None; m as usize];
    let mut last = 0u32;
    let mut k = 0;
    while k < term.atoms.len() {
        let (c, idx, p) = term.atoms[k];
        if c == 'g' {
            return Err(parse_error(
                p,
                "gamma generator in an EFB expression (mixed bases)",
            ));
        }
        if idx == 0 || idx > m {
            return Err(parse_error(
                p,
                format!("pair index {idx} out of range 1..={m}"),
            ));
        }
        let mut letters = vec![c];
        while k + letters.len() < term.atoms.len() {
            let (c2, idx2, _) = term.atoms[k + letters.len()];
            if idx2 != idx || c2 == 'g' {
                break;
            }
            letters.push(c2);
        }
        let factor = match letters.as_slice() {
            ['q', 'p'] => Factor::QP,
            ['p', 'q'] => Factor::PQ,
            ['p'] => Factor::P,
            ['q'] => Factor::Q,
            _ => return Err(parse_error(p, format!("pair index {idx} appears twice"))),
        };
        if factors[idx as usize - 1].is_some() {
            return Err(parse_error(p, format!("pair index {idx} appears twice")));
        }
        if idx < last {
            return Err(parse_error(p, format!("pair index {idx} out of order")));
        }
        factors[idx as usize - 1] = Some(factor);
        last = idx;
        k += letters.len();
    }
    if let Some(missing) = factors.iter().position(Option::is_none) {
        return Err(parse_error(
            term.pos,
            format!("pair index {} missing", missing + 1),
        ));
    }
    let factors: Vec<Factor> = factors.into_iter().flatten().collect();
    Ok(EfbKey::from_factors(&factors))
}

fn gamma_mask(term: &RawTerm, m: u32) -> Result<u32> {
    let mut mask = 0u32;
    let mut last = 0u32;
    for &(c, idx, p) in &term.atoms {
        if c != 'g' {
            return Err(parse_error(
                p,
                "EFB factor in a gamma expression (mixed bases)",
            ));
        }
        if idx == 0 || idx > 2 * m {
            return Err(parse_error(
                p,
                format!("generator index {idx} out of range 1..={}", 2 * m),
            ));
        }
        if idx == last {
            return Err(parse_error(
                p,
                format!("generator index {idx} appears twice"),
            ));
        }
        if idx < last {
            return Err(parse_error(
                p,
                format!("generator index {idx} out of order"),
            ));
        }
        mask |= 1 << (idx - 1);
        last = idx;
    }
    Ok(mask)
}

pub fn parse_efb<S: Scalar>(src: &str, config: AlgebraConfig) -> Result<Multivector<S>> {
    let m = config.m();
    let mut out = Multivector::zero(config);
    for term in split_terms(src)? {
        let c: S = term_coeff(&term)?;
        if term.atoms.is_empty() {
            out = &out + &Multivector::identity(config).scale(&c);
        } else {
            let key = efb_key(&term, m)?;
            out.add_term(key, c);
        }
    }
    Ok(out)
}

pub fn parse_gamma<S: Scalar>(src: &str, config: AlgebraConfig) -> Result<GammaMultivector<S>> {
    let m = config.m();
    let mut out = GammaMultivector::zero(config);
    for term in split_terms(src)? {
        let c: S = term_coeff(&term)?;
        out.add_term(gamma_mask(&term, m)?, c);
    }
    Ok(out)
}

/// Parses either basis into EFB coordinates.
pub fn parse_expression<S: Scalar>(
    src: &str,
    basis: Basis,
    config: AlgebraConfig,
) -> Result<Multivector<S>> {
    match basis {
        Basis::Efb => parse_efb(src, config),
        Basis::Gamma => Ok(gamma_to_efb(&parse_gamma(src, config)?)),
    }
}

fn join_terms<S: Scalar>(terms: impl Iterator<Item = (String, S)>) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let negative = c.is_negative();
        let mag = if negative { -c } else { c };
        let piece = if body.is_empty() {
            mag.to_literal()
        } else if mag == S::one() {
            body
        } else {
            format!("{} * {body}", mag.to_literal())
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&piece),
            (true, true) => {
                out.push('-');
                out.push_str(&piece);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&piece);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&piece);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Terms in ascending (h, g) order; `0` for the zero multivector.
pub fn format_efb<S: Scalar>(a: &Multivector<S>) -> String {
    let m = a.m();
    join_terms(a.terms().map(|(k, c)| (k.label(m), c.clone())))
}

pub fn format_gamma<S: Scalar>(a: &GammaMultivector<S>) -> String {
    join_terms(a.terms().map(|(mask, c)| {
        let body = if mask == 0 {
            String::new()
        } else {
            blade_label(mask)
        };
        (body, c.clone())
    }))
}

fn parse_signs(src: &str, m: u32, pos: Pos) -> Result<Signature> {
    if src.chars().count() != m as usize || !src.chars().all(|c| c == '+' || c == '-') {
        return Err(parse_error(pos, format!("expected {m} signs, got '{src}'")));
    }
    Signature::parse(src).map_err(|e| parse_error(pos, e.to_string()))
}

/// Parses `space=<hg>; c*<h> + …` (or `space=<hg>; 0`).
pub fn parse_spinor(src: &str, config: AlgebraConfig) -> Result<Spinor> {
    let m = config.m();
    let at = |column: usize| Pos { line: 1, column };
    if src.contains('\n') {
        return Err(parse_error(at(1), "spinor must be on one line"));
    }
    let chars: Vec<char> = src.chars().collect();
    let skip_ws = |mut i: usize| {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        i
    };
    let mut i = skip_ws(0);
    let header: String = chars[i..].iter().take(6).collect();
    if header != "space=" {
        return Err(parse_error(at(i + 1), "expected 'space='"));
    }
    i += 6;
    let semi = chars[i..]
        .iter()
        .position(|&c| c == ';')
        .map(|k| k + i)
        .ok_or_else(|| {
            parse_error(
                at(chars.len() + 1),
                "expected ';' after the space signature",
            )
        })?;
    let hg_src: String = chars[i..semi].iter().collect();
    let hg = parse_signs(hg_src.trim(), m, at(i + 1))?;
    let space = SpinorSpace::new(config, hg)?;
    let mut coords = vec![Rational::from_ratio(0, 1); space.dim()];
    i = skip_ws(semi + 1);
    if chars[i..].iter().collect::<String>().trim() == "0" {
        return Spinor::new(space, coords);
    }
    let mut first = true;
    while i < chars.len() {
        let mut negative = false;
        if !first || matches!(chars.get(i), Some('+') | Some('-')) {
            match chars.get(i) {
                Some('+') => {}
                Some('-') => negative = true,
                _ => return Err(parse_error(at(i + 1), "expected '+' or '-'")),
            }
            i = skip_ws(i + 1);
        }
        first = false;
        let star = chars[i..]
            .iter()
            .position(|&c| c == '*')
            .map(|k| k + i)
            .ok_or_else(|| parse_error(at(i + 1), "expected '<coeff>*<h-signature>'"))?;
        let lit: String = chars[i..star].iter().collect();
        let c = Rational::parse_literal(lit.trim()).ok_or_else(|| {
            parse_error(at(i + 1), format!("malformed rational '{}'", lit.trim()))
        })?;
        let h_start = star + 1;
        let h_end = (h_start + m as usize).min(chars.len());
        let h_src: String = chars[h_start..h_end].iter().collect();
        let h = parse_signs(&h_src, m, at(h_start + 1))?;
        coords[h.bits() as usize] += if negative { -c } else { c };
        i = skip_ws(h_end);
    }
    if first {
        return Err(parse_error(at(i + 1), "expected at least one term"));
    }
    Spinor::new(space, coords)
}

pub fn format_spinor(s: &Spinor) -> String {
    let m = s.config().m();
    let mut out = format!("space={}; ", s.space().hg());
    let mut first = true;
    for (h, c) in s.coords().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let sig = Signature::from_bits(h as u32, m);
        let negative = Scalar::is_negative(c);
        let mag = if negative { -c.clone() } else { c.clone() };
        let sep = match (first, negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        out.push_str(&format!("{sep}{}*{sig}", mag.to_literal()));
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}
