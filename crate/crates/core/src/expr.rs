//! Text syntax for rings, modules, and element literals.
//!
//! ```text
//! ring    := primary ("x" primary)*
//! primary := "Z" ["/" INT] | "TE" "(" ring "," module ")"
//! module  := "Z/" INT ("x" "Z/" INT)*
//! elem    := ["-"] INT | "(" elem ("," elem)+ ")"
//! list    := "" | elem (";" elem)*
//! ```
//!
//! Tuples flatten to coordinate vectors, so `(6, 1)` and `((6), (1))` name
//! the same element. Printing is canonical — one space around `x` and after
//! each comma — and `parse(print(r)) == r` for every supported descriptor
//! (products re-associate to the left).

use crate::error::{Error, Result};
use crate::module::{make_module, BaseRing, ModuleDescriptor};
use crate::ring::{make_product_ring, RingDescriptor};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", b as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits_from = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_from {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[digits_from..self.pos]).unwrap();
        match text.parse::<i64>() {
            Ok(v) if negative => Ok(-v),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Syntax {
                position: start,
                message: format!("integer '{text}' out of range"),
            }),
        }
    }

    fn modulus(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| Error::Syntax {
            position: start,
            message: "modulus cannot be negative".into(),
        })
    }

    // "Z" ["/" INT] | "TE" "(" ring "," module ")"
    fn primary_ring(&mut self) -> Result<RingDescriptor> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"TE") {
            self.pos += 2;
            self.skip_ws();
            self.expect(b'(')?;
            let base = self.ring()?;
            self.skip_ws();
            self.expect(b',')?;
            let base = match base {
                RingDescriptor::Residue(n) => BaseRing::Residue(n),
                RingDescriptor::Integers => BaseRing::Integers,
                other => {
                    return Err(Error::Unsupported(format!(
                        "extension base must be Z or Z/n, got {}",
                        print_ring(&other)
                    )))
                }
            };
            let module = self.module(base)?;
            self.skip_ws();
            self.expect(b')')?;
            return Ok(RingDescriptor::TrivialExtension(module));
        }
        if self.eat(b'Z') {
            if self.eat(b'/') {
                return Ok(RingDescriptor::Residue(self.modulus()?));
            }
            return Ok(RingDescriptor::Integers);
        }
        self.err("expected a ring ('Z', 'Z/n', product, or 'TE(...)')")
    }

    fn ring(&mut self) -> Result<RingDescriptor> {
        let mut acc = self.primary_ring()?;
        loop {
            self.skip_ws();
            if self.eat(b'x') {
                let rhs = self.primary_ring()?;
                acc = make_product_ring(&acc, &rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // "Z/" INT ("x" "Z/" INT)*
    fn module(&mut self, base: BaseRing) -> Result<ModuleDescriptor> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            self.expect(b'Z')?;
            self.expect(b'/')?;
            factors.push(self.modulus()?);
            self.skip_ws();
            if !self.eat(b'x') {
                break;
            }
        }
        make_module(base, &factors)
    }

    // ["-"] INT | "(" elem ("," elem)+ ")", flattened
    fn element(&mut self, out: &mut Vec<i64>) -> Result<()> {
        self.skip_ws();
        if self.eat(b'(') {
            self.element(out)?;
            self.skip_ws();
            self.expect(b',')?;
            loop {
                self.element(out)?;
                self.skip_ws();
                if !self.eat(b',') {
                    break;
                }
            }
            self.expect(b')')?;
            return Ok(());
        }
        out.push(self.integer()?);
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

pub fn parse_ring(text: &str) -> Result<RingDescriptor> {
    let mut p = Parser::new(text);
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

/// Semicolon-separated element literals; the empty string parses to none.
/// Each literal flattens to one signed coordinate vector.
pub fn parse_element_list(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.pos == p.src.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    loop {
        let mut coords = Vec::new();
        p.element(&mut coords)?;
        out.push(coords);
        p.skip_ws();
        if !p.eat(b';') {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}

pub fn print_ring(r: &RingDescriptor) -> String {
    match r {
        RingDescriptor::Residue(n) => format!("Z/{n}"),
        RingDescriptor::Integers => "Z".into(),
        RingDescriptor::Product(l, r) => format!("{} x {}", print_ring(l), print_ring(r)),
        RingDescriptor::TrivialExtension(m) => {
            let base = match m.base() {
                BaseRing::Residue(n) => format!("Z/{n}"),
                BaseRing::Integers => "Z".into(),
            };
            format!("TE({base}, {})", print_module(m))
        }
    }
}

pub fn print_module(m: &ModuleDescriptor) -> String {
    let parts: Vec<String> = m.factors().iter().map(|d| format!("Z/{d}")).collect();
    parts.join(" x ")
}

/// `3` for one coordinate, `(6, 1)` for several.
pub fn print_coords<T: std::fmt::Display>(coords: &[T]) -> String {
    if coords.len() == 1 {
        return coords[0].to_string();
    }
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::make_module;
    use crate::ring::{make_residue_ring, make_product_ring};

    #[test]
    fn rings_parse() {
        assert_eq!(parse_ring("Z/12").unwrap(), RingDescriptor::Residue(12));
        assert_eq!(parse_ring("Z").unwrap(), RingDescriptor::Integers);
        assert_eq!(
            parse_ring("TE(Z, Z/6)").unwrap(),
            RingDescriptor::TrivialExtension(make_module(BaseRing::Integers, &[6]).unwrap())
        );
        assert_eq!(
            parse_ring("TE(Z/4, Z/2 x Z/2)").unwrap(),
            RingDescriptor::TrivialExtension(
                make_module(BaseRing::Residue(4), &[2, 2]).unwrap()
            )
        );
        let product = make_product_ring(
            &make_residue_ring(2).unwrap(),
            &make_residue_ring(3).unwrap(),
        )
        .unwrap();
        assert_eq!(parse_ring("Z/2 x Z/3").unwrap(), product);
        assert_eq!(parse_ring("  Z/2x Z/3 ").unwrap(), product);
    }

    #[test]
    fn semantic_errors_surface() {
        // 3 does not divide 4, so the module cannot live over Z/4.
        assert!(matches!(parse_ring("TE(Z/4, Z/3)"), Err(Error::InvalidModule(_))));
        assert!(matches!(parse_ring("Z x Z"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_ring("TE(TE(Z, Z/2), Z/2)"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ring("Z/") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_ring("Z/6 extra") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_ring("TE(Z Z/2)") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn elements_flatten() {
        assert_eq!(parse_element_list("").unwrap(), Vec::<Vec<i64>>::new());
        assert_eq!(parse_element_list("5").unwrap(), vec![vec![5]]);
        assert_eq!(parse_element_list("-5").unwrap(), vec![vec![-5]]);
        assert_eq!(parse_element_list("(6, 1)").unwrap(), vec![vec![6, 1]]);
        assert_eq!(parse_element_list("((1,2),3)").unwrap(), vec![vec![1, 2, 3]]);
        assert_eq!(
            parse_element_list("(6,1); (0,-3)").unwrap(),
            vec![vec![6, 1], vec![0, -3]]
        );
        assert_eq!(parse_element_list("(1, 2, 3)").unwrap(), vec![vec![1, 2, 3]]);
        assert!(parse_element_list("(5)").is_err()); // tuples need two entries
        assert!(parse_element_list("(1, )").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for text in ["Z", "Z/12", "Z/2 x Z/3", "TE(Z, Z/6)", "TE(Z/4, Z/2 x Z/2)",
            "Z/2 x Z/3 x Z/5"]
        {
            let r = parse_ring(text).unwrap();
            assert_eq!(print_ring(&r), text);
            assert_eq!(parse_ring(&print_ring(&r)).unwrap(), r);
        }
        // Non-canonical spacing normalizes.
        assert_eq!(print_ring(&parse_ring("TE( Z , Z/6 )").unwrap()), "TE(Z, Z/6)");
    }

    #[test]
    fn coordinate_printing() {
        assert_eq!(print_coords(&[3u64]), "3");
        assert_eq!(print_coords(&[6u64, 1]), "(6, 1)");
    }
}
