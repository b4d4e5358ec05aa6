//! Byte cursor shared by the cycle-notation and library parsers.

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

/// A cycle as written, 1-based, with the position of each point.
pub(crate) type RawCycle = Vec<(usize, Pos)>;

#[derive(Clone)]
pub(crate) struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            at: 0,
            line: 1,
            column: 1,
        }
    }

    pub fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    pub fn error_at(pos: Pos, message: impl Into<String>) -> Error {
        Error::Parse {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Self::error_at(self.pos(), message)
    }

    fn bump(&mut self) -> Option<u8> {
        let b = *self.bytes.get(self.at)?;
        self.at += 1;
        if b == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(b)
    }

    pub fn peek_raw(&self) -> Option<u8> {
        self.bytes.get(self.at).copied()
    }

    pub fn advance(&mut self) {
        self.bump();
    }

    pub fn skip_ws(&mut self) {
        while let Some(b) = self.bytes.get(self.at) {
            if b.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Next non-whitespace byte, without consuming it.
    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.at).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, want: u8) -> bool {
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, want: u8) -> Result<(), Error> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{}'", want as char)))
        }
    }

    pub fn unexpected(&mut self, wanted: &str) -> Error {
        match self.peek() {
            Some(b) => self.error(format!("expected {wanted}, found '{}'", b as char)),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub fn uint(&mut self) -> Result<(usize, Pos), Error> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.at;
        while matches!(self.bytes.get(self.at), Some(b) if b.is_ascii_digit()) {
            self.bump();
        }
        if start == self.at {
            return Err(self.unexpected("an integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.at]).expect("ascii digits");
        digits
            .parse::<usize>()
            .map(|v| (v, pos))
            .map_err(|_| Self::error_at(pos, "integer too large"))
    }

    /// `"()"` or one or more `"(a,b,...)"` cycles. Points are returned as written.
    pub fn raw_perm(&mut self) -> Result<Vec<RawCycle>, Error> {
        if self.peek() != Some(b'(') {
            return Err(self.unexpected("'('"));
        }
        let mut cycles = Vec::new();
        while self.peek() == Some(b'(') {
            self.bump();
            if self.peek() == Some(b')') {
                if !cycles.is_empty() {
                    return Err(self.error("empty cycle inside a product"));
                }
                self.bump();
                // "()" stands alone; a following cycle is malformed
                if self.peek() == Some(b'(') {
                    return Err(self.error("cycle after \"()\""));
                }
                return Ok(cycles);
            }
            let mut cycle = vec![self.uint()?];
            while self.eat(b',') {
                cycle.push(self.uint()?);
            }
            if cycle.len() < 2 {
                return Err(self.unexpected("','"));
            }
            self.expect(b')')?;
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}
