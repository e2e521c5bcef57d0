//! Text formats: relators, words, orders and homogeneous forms.
//!
//! Relator grammar (whitespace is ignored):
//!
//! ```text
//! expr   := factor+            ('*' allowed between factors)
//! factor := atom ['^' int]
//! atom   := name | '1' | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! with `[a, b] = a^-1 b^-1 a b`. A run of letters such as `x1x2` that is not
//! itself a generator name is split greedily into generator names.

use crate::error::{Error, Result};
use crate::magnus::GroupElement;
use crate::words::{Alphabet, Letter, LetterOrder, OrderSpec, Word};

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => err(self.pos, format!("expected `{c}`, found `{found}`")),
                None => err(self.pos, format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// A maximal identifier `[A-Za-z_][A-Za-z0-9_]*`.
    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn unsigned(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn integer(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let pos = self.pos;
        let Some((start, digits)) = self.unsigned() else {
            return err(pos, "expected an integer");
        };
        let v: i64 = match digits.parse() {
            Ok(v) => v,
            Err(_) => return err(start, format!("integer `{digits}` is out of range")),
        };
        Ok(if negative { -v } else { v })
    }
}

/// Splits an identifier into generator names, preferring the longest match
/// at every step.
fn split_names(token: &str, start: usize, alphabet: &Alphabet) -> Result<Vec<Letter>> {
    if let Some(a) = alphabet.index_of(token) {
        return Ok(vec![a]);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < token.len() {
        let best = alphabet
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| token[i..].starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((a, n)) => {
                out.push(a);
                i += n.len();
            }
            None if out.is_empty() => return Err(Error::UnknownGenerator(token.to_string())),
            None => {
                return err(
                    start + i,
                    format!("unknown generator `{}` in `{token}`", &token[i..]),
                )
            }
        }
    }
    Ok(out)
}

struct RelatorParser<'a, 'b> {
    cur: Cursor<'a>,
    alphabet: &'b Alphabet,
    juxtaposed: bool,
}

impl RelatorParser<'_, '_> {
    fn starts_atom(&mut self) -> bool {
        matches!(self.cur.peek(), Some(c) if c == '[' || c == '(' || c == '1' || c == '_' || c.is_ascii_alphabetic())
    }

    fn expr(&mut self) -> Result<GroupElement> {
        if !self.starts_atom() {
            return match self.cur.peek() {
                Some(c) => err(self.cur.pos, format!("unexpected `{c}`")),
                None => err(self.cur.pos, "unexpected end of input"),
            };
        }
        let mut g = self.factor()?;
        loop {
            let star = self.cur.eat('*');
            if self.starts_atom() {
                g = g.mul(&self.factor()?);
            } else if star {
                return err(self.cur.pos, "expected a factor after `*`");
            } else {
                return Ok(g);
            }
        }
    }

    fn factor(&mut self) -> Result<GroupElement> {
        let mut atom = self.atom()?;
        // In a juxtaposed run like `x1x2^3` the exponent binds to the last letter.
        let mut head = GroupElement::identity();
        if self.juxtaposed && atom.syllables().len() > 1 {
            let (last, init) = atom.syllables().split_last().expect("nonempty");
            head = GroupElement::from_syllables(init.to_vec())?;
            atom = GroupElement::from_syllables(vec![*last])?;
        }
        self.juxtaposed = false;
        Ok(head.mul(&self.power(atom)?))
    }

    fn power(&mut self, atom: GroupElement) -> Result<GroupElement> {
        if self.cur.eat('^') {
            let pos = self.cur.pos;
            let k = self.cur.integer()?;
            if k == 0 {
                return err(pos, "zero exponent");
            }
            // Single syllables keep their exponent rather than being repeated.
            if let [(a, e)] = atom.syllables() {
                let e = e.checked_mul(k).ok_or(Error::Overflow("exponent"))?;
                return GroupElement::from_syllables(vec![(*a, e)]);
            }
            if k.unsigned_abs() > 1 << 16 {
                return err(pos, "exponent too large for a compound factor");
            }
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<GroupElement> {
        if self.cur.eat('[') {
            let a = self.expr()?;
            self.cur.expect(',')?;
            let b = self.expr()?;
            self.cur.expect(']')?;
            return Ok(GroupElement::commutator(&a, &b));
        }
        if self.cur.eat('(') {
            let g = self.expr()?;
            self.cur.expect(')')?;
            return Ok(g);
        }
        if self.cur.peek() == Some('1') {
            let pos = self.cur.pos;
            let (_, digits) = self.cur.unsigned().expect("peeked a digit");
            if digits != "1" {
                return err(pos, format!("unexpected number `{digits}`"));
            }
            return Ok(GroupElement::identity());
        }
        let pos = self.cur.pos;
        let Some((start, token)) = self.cur.identifier() else {
            return err(pos, "expected a generator, `[` or `(`");
        };
        let letters = split_names(token, start, self.alphabet)?;
        self.juxtaposed = true;
        GroupElement::from_syllables(letters.into_iter().map(|a| (a, 1)).collect())
    }
}

/// Parses a relator into its flattened syllable list.
pub fn parse_relator(text: &str, alphabet: &Alphabet) -> Result<GroupElement> {
    let mut p = RelatorParser {
        cur: Cursor::new(text),
        alphabet,
        juxtaposed: false,
    };
    let g = p.expr()?;
    if !p.cur.at_end() {
        let c = p.cur.peek().unwrap_or(' ');
        return err(p.cur.pos, format!("unexpected `{c}`"));
    }
    Ok(g)
}

/// Parses a word: generator names, juxtaposed or separated by `*`,
/// optionally in parentheses, with `^k` (k >= 1) for repeated letters.
/// `1` is the empty word.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let mut cur = Cursor::new(text);
    let paren = cur.eat('(');
    let mut letters = Vec::new();
    if cur.peek() == Some('1') {
        cur.unsigned();
    } else {
        loop {
            let pos = cur.pos;
            let Some((start, token)) = cur.identifier() else {
                return err(pos, "expected a generator name");
            };
            let part = split_names(token, start, alphabet)?;
            let repeat = if cur.eat('^') {
                let pos = cur.pos;
                match cur.unsigned().map(|(_, s)| s.parse::<usize>()) {
                    Some(Ok(k)) if (1..=1 << 16).contains(&k) => k,
                    _ => return err(pos, "expected a positive exponent"),
                }
            } else {
                1
            };
            let (last, head) = part.split_last().expect("nonempty split");
            letters.extend_from_slice(head);
            letters.extend(std::iter::repeat_n(*last, repeat));
            cur.eat('*');
            if !matches!(cur.peek(), Some(c) if c == '_' || c.is_ascii_alphabetic()) {
                break;
            }
        }
    }
    if paren {
        cur.expect(')')?;
    }
    if !cur.at_end() {
        let c = cur.peek().unwrap_or(' ');
        return err(cur.pos, format!("unexpected `{c}`"));
    }
    Ok(Word::new(letters))
}

/// Parses a comma-separated list of words.
pub fn parse_word_list(text: &str, alphabet: &Alphabet) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let shifted = |e: Error| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + offset,
                message,
            },
            other => other,
        };
        if !piece.trim().is_empty() {
            out.push(parse_word(piece, alphabet).map_err(shifted)?);
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn letter_chain(text: &str, alphabet: &Alphabet) -> Result<LetterOrder> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(LetterOrder::identity(alphabet.len()));
    }
    let mut ascending = Vec::new();
    for name in text.split('<') {
        let name = name.trim();
        ascending.push(alphabet.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?);
    }
    if ascending.len() != alphabet.len() {
        return Err(Error::InvalidPermutation(alphabet.len()));
    }
    LetterOrder::from_ascending(ascending)
}

fn letter_set(text: &str, alphabet: &Alphabet) -> Result<Vec<Letter>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| alphabet.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string())))
        .collect()
}

/// Parses an order description:
///
/// * `lex`, `lex:x2<x1<x3`
/// * `lenlex`, `lenlex:x2<x4<x1<x3`
/// * `gorder:tau=1;parts=Y0:x1,x3|Y1:x2,x4[;letters=x1<x2<x3<x4]`, where
///   `tau` is `1`, `weights` (the alphabet's) or a comma list, `Y0` lists
///   the letters outside every `Y_j`, and `sigma_j` is the indicator of `Y_j`
/// * `op:<order>`
///
/// A missing letter chain means the listing order.
pub fn parse_order(text: &str, alphabet: &Alphabet) -> Result<OrderSpec> {
    let text = text.trim();
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    let d = alphabet.len();
    match kind.trim() {
        "lex" => Ok(OrderSpec::Lex(letter_chain(rest, alphabet)?)),
        "lenlex" => Ok(OrderSpec::LengthLex(letter_chain(rest, alphabet)?)),
        "op" => Ok(parse_order(rest, alphabet)?.opposite()),
        "gorder" => {
            let mut weights = vec![1; d];
            let mut parts: Option<Vec<Vec<Letter>>> = None;
            let mut letters = LetterOrder::identity(d);
            for field in rest.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidInput(format!("expected key=value in `{field}`")))?;
                match key.trim() {
                    "tau" => {
                        weights = match value.trim() {
                            "1" => vec![1; d],
                            "weights" => alphabet.weights().to_vec(),
                            list => list
                                .split(',')
                                .map(|s| s.trim().parse::<u32>())
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|_| Error::InvalidInput(format!("bad tau `{list}`")))?,
                        }
                    }
                    "parts" => {
                        let mut ys = Vec::new();
                        for (j, part) in value.split('|').enumerate() {
                            let (label, set) = part
                                .split_once(':')
                                .ok_or_else(|| Error::InvalidPartition(format!("expected Y{j}:letters, got `{part}`")))?;
                            if label.trim() != format!("Y{j}") {
                                return Err(Error::InvalidPartition(format!(
                                    "parts must be listed as Y0, Y1, ...; found `{}`",
                                    label.trim()
                                )));
                            }
                            ys.push(letter_set(set, alphabet)?);
                        }
                        parts = Some(ys);
                    }
                    "letters" => letters = letter_chain(value, alphabet)?,
                    other => return Err(Error::InvalidInput(format!("unknown gorder field `{other}`"))),
                }
            }
            let parts = parts.unwrap_or_else(|| vec![(0..d).collect()]);
            let mut sigmas = Vec::new();
            for ys in &parts[1..] {
                let mut s = vec![0; d];
                for &a in ys {
                    s[a] = 1;
                }
                sigmas.push(s);
            }
            let mut rest_letters: Vec<Letter> = (0..d).filter(|&a| sigmas.iter().all(|s| s[a] == 0)).collect();
            let mut y0 = parts[0].clone();
            rest_letters.sort_unstable();
            y0.sort_unstable();
            if y0 != rest_letters {
                return Err(Error::InvalidPartition(
                    "Y0 must list exactly the letters outside Y1, ..., Ys".into(),
                ));
            }
            OrderSpec::gorder(weights, sigmas, letters)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown order kind `{other}` (expected lex, lenlex, gorder or op)"
        ))),
    }
}

/// Parses a noncommutative polynomial with integer coefficients, e.g.
/// `x1*x2 - x2*x1` or `2 x1^2 + x1x2`, into `(word, coefficient)` terms.
/// Repeated words are summed by the caller.
pub fn parse_polynomial(text: &str, alphabet: &Alphabet) -> Result<Vec<(Word, i64)>> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        if cur.at_end() {
            if first {
                return err(cur.pos, "empty polynomial");
            }
            return Ok(terms);
        }
        let mut sign = 1i64;
        if cur.eat('-') {
            sign = -1;
        } else if !cur.eat('+') && !first {
            let c = cur.peek().unwrap_or(' ');
            return err(cur.pos, format!("expected `+` or `-`, found `{c}`"));
        }
        first = false;
        let mut coeff = 1i64;
        if let Some((start, digits)) = cur.unsigned() {
            coeff = digits
                .parse()
                .map_err(|_| Error::Parse {
                    position: start,
                    message: format!("coefficient `{digits}` is out of range"),
                })?;
            cur.eat('*');
        }
        let mut letters = Vec::new();
        while let Some((start, token)) = cur.identifier() {
            let part = split_names(token, start, alphabet)?;
            let repeat = if cur.eat('^') {
                let pos = cur.pos;
                match cur.unsigned().map(|(_, s)| s.parse::<usize>()) {
                    Some(Ok(k)) if (1..=1 << 16).contains(&k) => k,
                    _ => return err(pos, "expected a positive exponent"),
                }
            } else {
                1
            };
            let (last, head) = part.split_last().expect("nonempty split");
            letters.extend_from_slice(head);
            letters.extend(std::iter::repeat_n(*last, repeat));
            cur.eat('*');
        }
        if letters.is_empty() {
            return err(cur.pos, "expected a monomial");
        }
        terms.push((Word::new(letters), sign * coeff));
    }
}
