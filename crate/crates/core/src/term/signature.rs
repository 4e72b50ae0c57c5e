use std::fmt;

use super::TermError;

/// An operation symbol, carrying its arity so that Polish words are
/// self-describing without a signature at hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    id: u16,
    arity: u8,
}

impl Symbol {
    pub fn id(self) -> usize {
        self.id as usize
    }

    pub fn arity(self) -> usize {
        self.arity as usize
    }
}

/// A finite set of named operation symbols with arities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    names: Vec<String>,
    arities: Vec<u8>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// The hom-algebra signature `{m/2, a/1}`, in that order.
    pub fn hom() -> Self {
        let mut sig = Self::new();
        sig.add("m", 2).expect("valid symbol");
        sig.add("a", 1).expect("valid symbol");
        sig
    }

    /// The associative signature `{m/2}`.
    pub fn binary() -> Self {
        let mut sig = Self::new();
        sig.add("m", 2).expect("valid symbol");
        sig
    }

    pub fn add(&mut self, name: &str, arity: usize) -> Result<Symbol, TermError> {
        if name.is_empty()
            || name
                .chars()
                .any(|c| c.is_whitespace() || c.is_ascii_digit())
            || name.contains(['[', ']', '+', '-', '*', '/', '(', ')'])
        {
            return Err(TermError::InvalidSymbolName(name.to_string()));
        }
        if self.names.iter().any(|n| n == name) {
            return Err(TermError::DuplicateSymbol(name.to_string()));
        }
        if arity > u8::MAX as usize || self.names.len() >= u16::MAX as usize {
            return Err(TermError::InvalidSymbolName(name.to_string()));
        }
        self.names.push(name.to_string());
        self.arities.push(arity as u8);
        Ok(Symbol {
            id: (self.names.len() - 1) as u16,
            arity: arity as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.iter().position(|n| n == name).map(|i| Symbol {
            id: i as u16,
            arity: self.arities[i],
        })
    }

    pub fn symbol(&self, id: usize) -> Symbol {
        Symbol {
            id: id as u16,
            arity: self.arities[id],
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| self.symbol(i))
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.id()]
    }

    /// Parses the signature file format: one `op <name> <arity>` per line,
    /// blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self, TermError> {
        let mut sig = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            sig.parse_op_line(line)
                .map_err(|e| TermError::AtLine(lineno + 1, Box::new(e)))?;
        }
        Ok(sig)
    }

    /// Accepts a single `op <name> <arity>` declaration.
    pub fn parse_op_line(&mut self, line: &str) -> Result<Symbol, TermError> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["op", name, arity] => {
                let arity: usize = arity
                    .parse()
                    .map_err(|_| TermError::BadDeclaration(line.to_string()))?;
                self.add(name, arity)
            }
            _ => Err(TermError::BadDeclaration(line.to_string())),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, arity) in self.names.iter().zip(&self.arities) {
            writeln!(f, "op {name} {arity}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_signature_layout() {
        let sig = Signature::hom();
        assert_eq!(sig.lookup("m").unwrap().arity(), 2);
        assert_eq!(sig.lookup("a").unwrap().arity(), 1);
        assert_eq!(sig.lookup("m").unwrap().id(), 0);
    }

    #[test]
    fn rejects_bad_names() {
        let mut sig = Signature::new();
        assert!(sig.add("x1", 0).is_err());
        assert!(sig.add("", 0).is_err());
        assert!(sig.add("a b", 1).is_err());
        sig.add("x", 0).unwrap();
        assert!(matches!(
            sig.add("x", 2),
            Err(TermError::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn parses_signature_file() {
        let sig = Signature::parse("# hom signature\nop m 2\n\nop a 1\nop e 0\n").unwrap();
        assert_eq!(sig.len(), 3);
        assert_eq!(sig.lookup("e").unwrap().arity(), 0);
        assert_eq!(Signature::parse(&sig.to_string()).unwrap(), sig);
        assert!(Signature::parse("op m two").is_err());
    }
}
