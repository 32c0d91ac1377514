use super::{CwBuilder, CwExpr, NodeId, MAX_LABEL};
use crate::error::{ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Lexer<'a> {
    toks: Vec<(usize, usize, Tok<'a>)>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut end = (1, 1);
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            end = (ln, line.len() + 1);
            if line.trim_start().starts_with('#') {
                continue;
            }
            let b = line.as_bytes();
            let mut j = 0;
            while j < b.len() {
                match b[j] {
                    b'(' => {
                        toks.push((ln, j + 1, Tok::Open));
                        j += 1;
                    }
                    b')' => {
                        toks.push((ln, j + 1, Tok::Close));
                        j += 1;
                    }
                    c if c.is_ascii_whitespace() => j += 1,
                    _ => {
                        let start = j;
                        while j < b.len() && !b[j].is_ascii_whitespace() && b[j] != b'(' && b[j] != b')' {
                            j += 1;
                        }
                        toks.push((ln, start + 1, Tok::Atom(&line[start..j])));
                    }
                }
            }
        }
        Lexer { toks, pos: 0, end }
    }

    fn next(&mut self) -> std::result::Result<(usize, usize, Tok<'a>), ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ParseError::new(self.end.0, self.end.1, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn label(&mut self) -> std::result::Result<(usize, usize, u32), ParseError> {
        let (l, c, t) = self.next()?;
        match t {
            Tok::Atom(a) => {
                let v: u64 = a
                    .parse()
                    .map_err(|_| ParseError::new(l, c, format!("expected label, found `{a}`")))?;
                if v == 0 {
                    return Err(ParseError::new(l, c, "label 0 is not allowed"));
                }
                if v > MAX_LABEL as u64 {
                    return Err(ParseError::new(l, c, format!("label {v} exceeds {MAX_LABEL}")));
                }
                Ok((l, c, v as u32))
            }
            _ => Err(ParseError::new(l, c, "expected label")),
        }
    }
}

enum Frame {
    Union(Vec<NodeId>),
    Rename(u32, u32),
    Join(u32, u32),
}

/// Parses `(intro L) | (union E E) | (rename L L E) | (join L L E)`; lines
/// whose first non-blank character is `#` are comments.
pub fn parse_expr(text: &str) -> Result<CwExpr> {
    let mut lx = Lexer::new(text);
    let mut b = CwBuilder::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut done: Option<NodeId> = None;
    loop {
        // Parse one "(head ..." opener, or a complete intro.
        let (l, c, t) = lx.next()?;
        if t != Tok::Open {
            return Err(ParseError::new(l, c, "expected `(`").into());
        }
        let (hl, hc, head) = lx.next()?;
        let mut node = None;
        match head {
            Tok::Atom("intro") => {
                let (_, _, lab) = lx.label()?;
                close(&mut lx)?;
                node = Some(b.intro(lab));
            }
            Tok::Atom("union") => stack.push(Frame::Union(Vec::new())),
            Tok::Atom(op @ ("rename" | "join")) => {
                let (_, _, i) = lx.label()?;
                let (jl, jc, j) = lx.label()?;
                if i == j {
                    return Err(ParseError::new(jl, jc, format!("{op} with equal labels {i}")).into());
                }
                stack.push(if op == "join" { Frame::Join(i, j) } else { Frame::Rename(i, j) });
            }
            Tok::Atom(a) => return Err(ParseError::new(hl, hc, format!("unknown operation `{a}`")).into()),
            _ => return Err(ParseError::new(hl, hc, "expected operation name").into()),
        }
        // Feed completed nodes to enclosing frames.
        while let Some(n) = node.take() {
            match stack.last_mut() {
                None => {
                    done = Some(n);
                    break;
                }
                Some(Frame::Union(parts)) => {
                    parts.push(n);
                    if parts.len() == 2 {
                        let (x, y) = (parts[0], parts[1]);
                        stack.pop();
                        close(&mut lx)?;
                        node = Some(b.union(x, y));
                    }
                }
                Some(&mut Frame::Rename(i, j)) => {
                    stack.pop();
                    close(&mut lx)?;
                    node = Some(b.rename(i, j, n));
                }
                Some(&mut Frame::Join(i, j)) => {
                    stack.pop();
                    close(&mut lx)?;
                    node = Some(b.join(i, j, n));
                }
            }
        }
        if let Some(root) = done {
            if let Some(&(l, c, _)) = lx.toks.get(lx.pos) {
                return Err(ParseError::new(l, c, "trailing input after expression").into());
            }
            return b.finish(root);
        }
    }
}

fn close(lx: &mut Lexer<'_>) -> std::result::Result<(), ParseError> {
    let (l, c, t) = lx.next()?;
    if t == Tok::Close {
        Ok(())
    } else {
        Err(ParseError::new(l, c, "expected `)`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::expr::Node;

    fn pos(e: Error) -> (usize, usize) {
        match e {
            Error::Parse(p) => (p.line, p.col),
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn parse_examples() {
        let e = parse_expr("(join 1 2 (union (intro 1) (intro 2)))").unwrap();
        assert_eq!(
            e.nodes(),
            &[
                Node::Intro(1),
                Node::Intro(2),
                Node::Union(0, 1),
                Node::Join { a: 1, b: 2, child: 2 }
            ]
        );
        assert!(parse_expr("(join 1 1 (intro 1))").is_err());
        let e = parse_expr("(rename 2 1 (join 1 2 (union (intro 1) (intro 2))))").unwrap();
        assert_eq!(e.len(), 5);
    }

    #[test]
    fn whitespace_and_comments() {
        let text = "# a comment\n(join 1 2\n  (union (intro 1)\n\t(intro 2)))\n";
        let e = parse_expr(text).unwrap();
        assert_eq!(e.to_string(), "(join 1 2 (union (intro 1) (intro 2)))");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(pos(parse_expr("(intro 0)").unwrap_err()), (1, 8));
        assert_eq!(pos(parse_expr("(intro 1)\n(intro 2)").unwrap_err()), (2, 1));
        assert_eq!(pos(parse_expr("(union (intro 1)\n (frob 2))").unwrap_err()), (2, 3));
        assert_eq!(pos(parse_expr("(rename 3 3 (intro 3))").unwrap_err()), (1, 11));
        assert!(parse_expr("(intro 2147483648)").is_err());
        assert!(parse_expr("(intro 2147483647)").is_ok());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("(union (intro 1))").is_err());
    }
}
