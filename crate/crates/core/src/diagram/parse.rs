use serde::Deserialize;

use crate::error::{Error, Result};

use super::Diagram;

#[derive(Deserialize)]
struct JsonDiagram {
    crossings: Vec<[i64; 4]>,
}

/// Parses PD text (`X[a,b,c,d] ...`), the JSON diagram format
/// `{"crossings": [[a,b,c,d], ...]}`, or the literal `unknot`.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::MalformedNotation("empty input".into()));
    }
    if trimmed.eq_ignore_ascii_case("unknot") {
        return Ok(Diagram::unknot());
    }
    if trimmed.starts_with('{') {
        let parsed: JsonDiagram = serde_json::from_str(trimmed)
            .map_err(|e| Error::MalformedNotation(format!("json: {e}")))?;
        if parsed.crossings.is_empty() {
            return Ok(Diagram::unknot());
        }
        return Diagram::from_labels(&parsed.crossings);
    }
    let crossings = parse_x_tokens(trimmed)?;
    Diagram::from_labels(&crossings)
}

fn parse_x_tokens(text: &str) -> Result<Vec<[i64; 4]>> {
    let mut body = text;
    // Optional Mathematica-style `PD[...]` wrapper.
    if body.len() >= 3 && body[..3].eq_ignore_ascii_case("pd[") && body.ends_with(']') {
        body = &body[3..body.len() - 1];
    }

    let bytes = body.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos] as char;
        if ch.is_whitespace() || ch == ',' {
            pos += 1;
            continue;
        }
        if ch != 'X' && ch != 'x' {
            return Err(Error::MalformedNotation(format!(
                "unexpected character {ch:?} at offset {pos}"
            )));
        }
        pos += 1;
        while pos < bytes.len() && (bytes[pos] as char).is_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() || bytes[pos] != b'[' {
            return Err(Error::MalformedNotation(format!("expected '[' at offset {pos}")));
        }
        let close = body[pos..]
            .find(']')
            .map(|i| pos + i)
            .ok_or_else(|| Error::MalformedNotation("unterminated X[...]".into()))?;
        let inner = &body[pos + 1..close];
        let labels: Vec<i64> = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::MalformedNotation(format!("bad edge label {:?}", s.trim())))
            })
            .collect::<Result<_>>()?;
        if labels.len() != 4 {
            return Err(Error::MalformedNotation(format!(
                "crossing X[{inner}] has {} labels, expected 4",
                labels.len()
            )));
        }
        out.push([labels[0], labels[1], labels[2], labels[3]]);
        pos = close + 1;
    }
    if out.is_empty() {
        return Err(Error::MalformedNotation("no crossings found".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_commas_case_and_wrapper() {
        let a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let b = parse_pd("PD[x[1, 4, 2, 5], X[3,6,4,1],X[5,2,6,3]]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_matches_text() {
        let a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let b = parse_pd(r#"{"crossings": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "Y[1,2,3,4]", "X[1,2,3]", "X[1,2,a,4]", "X[1,2,3,4", "{\"crossings\": 3}"] {
            assert!(matches!(parse_pd(bad), Err(Error::MalformedNotation(_))), "{bad}");
        }
    }

    #[test]
    fn labels_used_once_are_rejected() {
        let err = parse_pd("X[1,4,2,5] X[3,6,4,1]").unwrap_err();
        match err {
            Error::InconsistentDiagram(msg) => {
                assert!(msg.contains('2') && msg.contains('5') && msg.contains('6'), "{msg}")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_consecutive_labels_normalize() {
        let a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let b = parse_pd("X[10,40,20,50] X[30,60,40,10] X[50,20,60,30]").unwrap();
        assert_eq!(a, b);
    }
}
