//! Plain-text loop catalogs.
//!
//! ```text
//! # comment
//! loop C2
//! order 2
//! 1 2
//! 2 1
//! ```
//!
//! Entries are 1-based. Blocks are separated by blank lines; the writer
//! emits single spaces and `\n` line endings.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::loops::Loop;

pub fn read_loops(path: impl AsRef<Path>) -> Result<Vec<Loop>> {
    read_loops_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_loops(path: impl AsRef<Path>, loops: &[Loop]) -> Result<()> {
    std::fs::write(path, write_loops_to_string(loops))?;
    Ok(())
}

/// Name used for loops written without one: `L<position>`, 1-based.
fn default_name(position: usize) -> String {
    format!("L{}", position + 1)
}

pub fn write_loops_to_string(loops: &[Loop]) -> String {
    let mut out = String::new();
    for (i, l) in loops.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let name = l.name().map_or_else(|| default_name(i), str::to_owned);
        let _ = writeln!(out, "loop {name}");
        let _ = writeln!(out, "order {}", l.order());
        for row in l.rows() {
            let cells: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

pub fn read_loops_from_str(text: &str) -> Result<Vec<Loop>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
        .peekable();
    let mut loops = Vec::new();
    loop {
        while lines.peek().is_some_and(|(_, l)| l.is_empty()) {
            lines.next();
        }
        let Some((line, header)) = lines.next() else {
            break;
        };
        let name = header
            .strip_prefix("loop")
            .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
            .map(str::trim)
            .ok_or_else(|| parse_error(line, format!("expected `loop <name>`, found `{header}`")))?;
        let name = if name.is_empty() {
            default_name(loops.len())
        } else {
            name.to_owned()
        };
        let (line, order_line) = lines
            .next()
            .ok_or_else(|| parse_error(line, "missing `order` line".into()))?;
        let order: usize = order_line
            .strip_prefix("order")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| parse_error(line, format!("expected `order <n>`, found `{order_line}`")))?;
        if order == 0 {
            return Err(parse_error(line, "order must be positive".into()));
        }
        let mut rows = Vec::with_capacity(order);
        let mut last = line;
        for _ in 0..order {
            let (line, text) = lines
                .next()
                .filter(|(_, t)| !t.is_empty())
                .ok_or_else(|| parse_error(last + 1, format!("loop {name}: expected {order} rows")))?;
            last = line;
            let row = text
                .split_whitespace()
                .map(|tok| match tok.parse::<usize>() {
                    Ok(v) if (1..=order).contains(&v) => Ok(v - 1),
                    _ => Err(parse_error(line, format!("entry `{tok}` is not in 1..={order}"))),
                })
                .collect::<Result<Vec<usize>>>()?;
            if row.len() != order {
                return Err(parse_error(
                    line,
                    format!("row has {} entries, expected {order}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some(&(line, extra)) = lines.peek() {
            if !extra.is_empty() {
                return Err(parse_error(line, format!("loop {name}: unexpected extra row")));
            }
        }
        let l = Loop::from_table(&rows, None).map_err(|e| Error::InLoop {
            name: name.clone(),
            source: Box::new(e),
        })?;
        loops.push(l.with_name(name));
    }
    Ok(loops)
}

fn parse_error(line: usize, reason: String) -> Error {
    Error::Parse { line, reason }
}
