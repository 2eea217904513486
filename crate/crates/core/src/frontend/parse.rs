use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A statement of the source language, before lowering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceGate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Rx(f64, usize),
    Ry(f64, usize),
    Rz(f64, usize),
    Cx(usize, usize),
    Cz(usize, usize),
    Xx(f64, usize, usize),
    Swap(usize, usize),
    Barrier,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParsedProgram {
    pub qubit_count: usize,
    pub gates: Vec<SourceGate>,
}

struct Register {
    name: String,
    size: usize,
}

/// Parses the line-oriented `.lqasm` subset. Line numbers in errors are
/// 1-based; CRLF endings and `//` comments are accepted.
pub fn parse(src: &str) -> Result<ParsedProgram> {
    let mut reg: Option<Register> = None;
    let mut gates = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let code = match line.find("//") {
            Some(pos) => &line[..pos],
            None => line,
        };
        let mut parts: Vec<&str> = code.split(';').collect();
        let tail = parts.pop().unwrap_or("");
        if !tail.trim().is_empty() {
            return Err(Error::parse(
                line_no,
                format!("missing ';' after `{}`", tail.trim()),
            ));
        }
        for stmt in parts.into_iter().map(str::trim) {
            if stmt.is_empty() {
                continue;
            }
            parse_statement(stmt, line_no, &mut reg, &mut gates)?;
        }
    }

    Ok(ParsedProgram {
        qubit_count: reg.map_or(0, |r| r.size),
        gates,
    })
}

fn parse_statement(
    stmt: &str,
    line: usize,
    reg: &mut Option<Register>,
    gates: &mut Vec<SourceGate>,
) -> Result<()> {
    let name_end = stmt
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(stmt.len());
    let (name, rest) = stmt.split_at(name_end);
    let rest = rest.trim_start();

    if name == "qreg" {
        if reg.is_some() {
            return Err(Error::parse(line, "only one qreg is supported"));
        }
        let (rname, size) = parse_indexed(rest, line)?;
        *reg = Some(Register {
            name: rname.to_string(),
            size,
        });
        return Ok(());
    }

    let (angle, args) = if let Some(inner) = rest.strip_prefix('(') {
        let close = matching_paren(inner)
            .ok_or_else(|| Error::parse(line, "malformed angle: unbalanced parentheses"))?;
        let value = eval_angle(&inner[..close])
            .map_err(|e| Error::parse(line, format!("malformed angle: {e}")))?;
        (Some(value), inner[close + 1..].trim())
    } else {
        (None, rest)
    };

    if name == "barrier" {
        if angle.is_some() {
            return Err(Error::parse(line, "barrier takes no angle"));
        }
        if !args.is_empty() {
            // operands are allowed but the barrier always spans every qubit
            operands(args, line, reg.as_ref())?;
        }
        gates.push(SourceGate::Barrier);
        return Ok(());
    }

    let (arity, wants_angle) = match name {
        "h" | "x" | "y" | "z" => (1, false),
        "rx" | "ry" | "rz" => (1, true),
        "cx" | "cz" | "swap" => (2, false),
        "xx" => (2, true),
        _ => return Err(Error::parse(line, format!("unknown statement `{name}`"))),
    };
    match (wants_angle, angle) {
        (true, None) => {
            return Err(Error::parse(
                line,
                format!("malformed angle: `{name}` needs one"),
            ))
        }
        (false, Some(_)) => return Err(Error::parse(line, format!("`{name}` takes no angle"))),
        _ => {}
    }
    let qs = operands(args, line, reg.as_ref())?;
    if qs.len() != arity {
        return Err(Error::parse(
            line,
            format!("`{name}` takes {arity} operand(s), got {}", qs.len()),
        ));
    }
    if arity == 2 && qs[0] == qs[1] {
        return Err(Error::parse(line, format!("`{name}` operands must differ")));
    }
    let a = angle.unwrap_or(0.0);
    gates.push(match name {
        "h" => SourceGate::H(qs[0]),
        "x" => SourceGate::X(qs[0]),
        "y" => SourceGate::Y(qs[0]),
        "z" => SourceGate::Z(qs[0]),
        "rx" => SourceGate::Rx(a, qs[0]),
        "ry" => SourceGate::Ry(a, qs[0]),
        "rz" => SourceGate::Rz(a, qs[0]),
        "cx" => SourceGate::Cx(qs[0], qs[1]),
        "cz" => SourceGate::Cz(qs[0], qs[1]),
        "xx" => SourceGate::Xx(a, qs[0], qs[1]),
        "swap" => SourceGate::Swap(qs[0], qs[1]),
        _ => unreachable!(),
    });
    Ok(())
}

fn operands(args: &str, line: usize, reg: Option<&Register>) -> Result<Vec<usize>> {
    let reg = reg.ok_or_else(|| Error::parse(line, "gate before qreg declaration"))?;
    let mut out = Vec::new();
    for a in args.split(',') {
        let (name, index) = parse_indexed(a.trim(), line)?;
        if name != reg.name {
            return Err(Error::parse(line, format!("unknown register `{name}`")));
        }
        if index >= reg.size {
            return Err(Error::parse(line, "index out of range"));
        }
        out.push(index);
    }
    Ok(out)
}

/// `name[index]`
fn parse_indexed(s: &str, line: usize) -> Result<(&str, usize)> {
    let bad = || Error::parse(line, format!("expected `name[index]`, got `{s}`"));
    let open = s.find('[').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let name = s[..open].trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(bad());
    }
    let index = inner.trim().parse::<usize>().map_err(|_| bad())?;
    Ok((name, index))
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Evaluates `+ - * /`, parentheses, unary minus, real literals and `pi`.
pub(crate) fn eval_angle(src: &str) -> std::result::Result<f64, String> {
    let mut p = ExprParser {
        s: src.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(format!("unexpected `{}`", &src[p.pos..]));
    }
    if !v.is_finite() {
        return Err(format!("`{src}` is not finite"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == b'+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn term(&mut self) -> std::result::Result<f64, String> {
        let mut v = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == b'*' { v * rhs } else { v / rhs };
        }
        Ok(v)
    }

    fn unary(&mut self) -> std::result::Result<f64, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> std::result::Result<f64, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.s[start..self.pos] {
                    b"pi" => Ok(PI),
                    other => Err(format!("unknown name `{}`", String::from_utf8_lossy(other))),
                }
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                // exponent
                if self.pos < self.s.len() && matches!(self.s[self.pos], b'e' | b'E') {
                    let save = self.pos;
                    self.pos += 1;
                    if self.pos < self.s.len() && matches!(self.s[self.pos], b'+' | b'-') {
                        self.pos += 1;
                    }
                    let digits = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if digits == self.pos {
                        self.pos = save;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                text.parse::<f64>()
                    .map_err(|_| format!("bad number `{text}`"))
            }
            Some(c) => Err(format!("unexpected `{}`", c as char)),
            None => Err("empty expression".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cx_on_one_line() {
        let p = parse("qreg q[2]; cx q[0],q[1];").unwrap();
        assert_eq!(p.qubit_count, 2);
        assert_eq!(p.gates, vec![SourceGate::Cx(0, 1)]);
    }

    #[test]
    fn rx_pi_over_two() {
        let p = parse("qreg q[1]; rx(pi/2) q[0];").unwrap();
        assert_eq!(p.gates, vec![SourceGate::Rx(PI / 2.0, 0)]);
    }

    #[test]
    fn out_of_range_reports_line() {
        let err = parse("qreg q[2]; cx q[0],q[2];").unwrap_err();
        assert_eq!(err.to_string(), "index out of range, line 1");
    }

    #[test]
    fn angle_forms() {
        let close = |s: &str, v: f64| assert!((eval_angle(s).unwrap() - v).abs() < 1e-15, "{s}");
        close("pi/4", PI / 4.0);
        close("-pi/2", -PI / 2.0);
        close("3*pi/2", 3.0 * PI / 2.0);
        close("0.125", 0.125);
        close("-1.5e-3", -1.5e-3);
        close("2*(pi - 1)", 2.0 * (PI - 1.0));
        assert!(eval_angle("pi/").is_err());
        assert!(eval_angle("tau").is_err());
        assert!(eval_angle("1/0").is_err());
    }

    #[test]
    fn comments_and_crlf() {
        let src =
            "// header\r\nqreg q[3];\r\nh q[0]; // hadamard\r\n\r\ncz q[1],q[2];\r\nbarrier;\r\n";
        let p = parse(src).unwrap();
        assert_eq!(p.qubit_count, 3);
        assert_eq!(
            p.gates,
            vec![SourceGate::H(0), SourceGate::Cz(1, 2), SourceGate::Barrier]
        );
    }

    #[test]
    fn error_lines_and_messages() {
        let e = parse("qreg q[2];\nfoo q[0];").unwrap_err();
        assert_eq!(e, Error::parse(2, "unknown statement `foo`"));
        let e = parse("qreg q[2];\n\nrx(pi/) q[0];").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(e.to_string().contains("malformed angle"));
        let e = parse("qreg q[2];\nh q[0]").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("h q[0];").unwrap_err();
        assert!(e.to_string().contains("before qreg"));
        let e = parse("qreg q[2];\ncx q[0],q[0];").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse("qreg q[2];\nrx q[0];").unwrap_err();
        assert!(e.to_string().contains("malformed angle"));
        let e = parse("qreg q[2];\ncx r[0],q[1];").unwrap_err();
        assert!(e.to_string().contains("unknown register"));
    }

    #[test]
    fn every_statement_kind() {
        let src = "qreg q[3];\nh q[0];\nx q[1];\ny q[2];\nz q[0];\nrx(0.5) q[0];\nry(-pi) q[1];\nrz(pi/8) q[2];\ncx q[0],q[1];\ncz q[1],q[2];\nxx(pi/4) q[0],q[2];\nswap q[2],q[0];\nbarrier;\n";
        let p = parse(src).unwrap();
        assert_eq!(p.gates.len(), 12);
        assert_eq!(p.gates[9], SourceGate::Xx(PI / 4.0, 0, 2));
        assert_eq!(p.gates[10], SourceGate::Swap(2, 0));
    }
}
