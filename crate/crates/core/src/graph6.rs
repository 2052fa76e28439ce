//! graph6 encoding, decoding and line-oriented file streaming.
//!
//! Only the short form is handled: the first byte is `n + 63` for `n <= 62`,
//! followed by the upper triangle of the adjacency matrix in column order
//! `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte, most significant bit
//! first, each byte offset by 63.

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;
const SHORT_FORM_MAX: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("expected {expected} bytes for a graph on {n} vertices, found {found}")]
    Length { n: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error("graph order {n} at offset 0 exceeds the supported maximum of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("{0} input is not supported; expected graph6")]
    WrongFormat(&'static str),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes a graph6 string. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    match first {
        b':' => return Err(Graph6Error::WrongFormat("sparse6")),
        b'&' => return Err(Graph6Error::WrongFormat("digraph6")),
        _ => {}
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Graph6Error::OutOfRange { offset, byte });
        }
    }
    if first == 126 {
        return Err(Graph6Error::TooLarge { n: 63, max: MAX_VERTICES });
    }
    let n = (first - BIAS) as usize;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n, max: MAX_VERTICES });
    }
    let body = &bytes[1..];
    let expected = data_len(n);
    if body.len() != expected {
        return Err(Graph6Error::Length { n, expected: expected + 1, found: bytes.len() });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = body[bit / 6] - BIAS;
        let pad_mask = (1u8 << (6 - bit % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Graph6Error::Padding { offset: bit / 6 + 1 });
        }
    }
    Ok(g)
}

/// Encodes a graph in short-form graph6.
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    debug_assert!(n <= SHORT_FORM_MAX);
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            bits += 1;
            if bits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
}

/// One decoded line of a graph6 stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamItem {
    /// 1-based line number in the source.
    pub line: usize,
    pub text: String,
    pub graph: Graph,
}

/// Iterator over the graphs in a newline-delimited graph6 source.
///
/// Blank lines and lines starting with `>` are skipped. In strict mode the
/// first parse error is yielded and iteration ends; otherwise parse errors are
/// yielded in place and reading continues.
pub struct Graph6Stream<R> {
    reader: R,
    line: usize,
    strict: bool,
    done: bool,
    buf: String,
}

impl<R: BufRead> Graph6Stream<R> {
    pub fn new(reader: R, strict: bool) -> Self {
        Graph6Stream { reader, line: 0, strict, done: false, buf: String::new() }
    }

    /// Number of lines consumed so far.
    pub fn lines_read(&self) -> usize {
        self.line
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<StreamItem, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line += 1;
                    let text = self.buf.trim();
                    if text.is_empty() || (text.starts_with('>') && !text.starts_with(">>graph6<<")) {
                        continue;
                    }
                    if text == ">>graph6<<" {
                        continue;
                    }
                    return Some(match decode(text) {
                        Ok(graph) => Ok(StreamItem { line: self.line, text: text.to_string(), graph }),
                        Err(source) => {
                            if self.strict {
                                self.done = true;
                            }
                            Err(StreamError::Parse { line: self.line, source })
                        }
                    });
                }
                Err(e) => {
                    self.done = true;
                    return Some(Err(StreamError::Io(e)));
                }
            }
        }
        None
    }
}

/// Opens a graph6 file for streaming.
pub fn stream(path: impl AsRef<Path>, strict: bool) -> io::Result<Graph6Stream<BufReader<File>>> {
    Ok(Graph6Stream::new(BufReader::new(File::open(path)?), strict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn known_strings() {
        assert_eq!(decode("?").unwrap(), Graph::empty(0));
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        // K2 is "A_", the 5-vertex example used by petgraph is "DQc"
        assert_eq!(encode(&Graph::complete(2)), "A_");
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
    }

    #[test]
    fn first_bit_is_pair_zero_one() {
        let g = decode("B_").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = decode("BO").unwrap();
        assert_eq!(g.edges(), vec![(0, 2)]);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("H"), Err(Graph6Error::Length { n: 9, .. })));
        assert!(matches!(decode("A_ _"), Err(Graph6Error::OutOfRange { offset: 2, byte: b' ' })));
        assert!(matches!(decode("A\x7f"), Err(Graph6Error::OutOfRange { offset: 1, .. })));
        assert!(matches!(decode(":Fa@x^"), Err(Graph6Error::WrongFormat("sparse6"))));
        assert!(matches!(decode("&B?"), Err(Graph6Error::WrongFormat("digraph6"))));
        assert!(matches!(decode("A@"), Err(Graph6Error::Padding { .. })));
        assert!(matches!(decode("~?@?"), Err(Graph6Error::TooLarge { .. })));
    }

    #[test]
    fn header_is_accepted() {
        assert_eq!(decode(">>graph6<<A_").unwrap(), Graph::complete(2));
    }

    #[test]
    fn lenient_stream_reports_and_continues() {
        let src = ">>graph6<<\nGCRdvK\n\nA_x\nHCpVdZY\n";
        let items: Vec<_> = Graph6Stream::new(Cursor::new(src), false).collect();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].as_ref().unwrap().graph.order(), 8);
        assert!(matches!(items[1], Err(StreamError::Parse { line: 4, .. })));
        let last = items[2].as_ref().unwrap();
        assert_eq!((last.line, last.graph.order()), (5, 9));
    }

    #[test]
    fn strict_stream_stops_at_first_error() {
        let src = "A_x\nGCRdvK\n";
        let items: Vec<_> = Graph6Stream::new(Cursor::new(src), true).collect();
        assert_eq!(items.len(), 1);
        assert!(items[0].is_err());
    }

    #[test]
    fn empty_source() {
        assert_eq!(Graph6Stream::new(Cursor::new(""), false).count(), 0);
    }
}
