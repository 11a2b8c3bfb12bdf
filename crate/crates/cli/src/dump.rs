//! Adjacency-dump format for graphs too large for graph6 (comparability
//! graphs reach thousands of vertices).
//!
//! One dump is a header line `n=<N>` followed by `N` lines of hex-packed
//! adjacency bitrows: vertex `j` of row `i` sits in byte `j / 8`, bit
//! `7 - j % 8` (big-endian within the byte), `2 * ceil(N / 8)` lowercase
//! hex digits per line. Dumps concatenate back to back on a stream.

use anyhow::{bail, Context, Result};
use specter_core::Graph;

pub fn write_dump(g: &Graph, out: &mut String) {
    let n = g.n();
    let bytes_per_row = n.div_ceil(8);
    out.push_str(&format!("n={n}\n"));
    for u in 0..n {
        let mut row = vec![0u8; bytes_per_row];
        for v in g.neighbors(u) {
            row[v / 8] |= 1 << (7 - v % 8);
        }
        for b in row {
            out.push_str(&format!("{b:02x}"));
        }
        out.push('\n');
    }
}

/// Parses every dump on the stream; blank lines between dumps are allowed.
pub fn read_dumps(input: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut lines = input.lines().enumerate();
    while let Some((lineno, line)) = lines.next() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some(n_text) = line.strip_prefix("n=") else {
            bail!("line {}: expected dump header `n=<N>`, got {:?}", lineno + 1, line);
        };
        let n: usize = n_text
            .parse()
            .with_context(|| format!("line {}: bad vertex count {n_text:?}", lineno + 1))?;
        let bytes_per_row = n.div_ceil(8);
        let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
        for i in 0..n {
            let Some((rowno, row_line)) = lines.next() else {
                bail!("dump of order {n} truncated after {i} rows");
            };
            let row_line = row_line.trim();
            if row_line.len() != bytes_per_row * 2 {
                bail!(
                    "line {}: row has {} hex digits, expected {}",
                    rowno + 1,
                    row_line.len(),
                    bytes_per_row * 2
                );
            }
            let mut row = Vec::with_capacity(bytes_per_row);
            for k in 0..bytes_per_row {
                let byte = u8::from_str_radix(&row_line[2 * k..2 * k + 2], 16)
                    .with_context(|| format!("line {}: invalid hex", rowno + 1))?;
                row.push(byte);
            }
            rows.push(row);
        }
        let mut edges = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            for v in (u + 1)..n {
                if row[v / 8] >> (7 - v % 8) & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        // Symmetry check against the lower triangle.
        for (u, v) in &edges {
            if rows[*v][u / 8] >> (7 - u % 8) & 1 != 1 {
                bail!("dump of order {n}: row {v} disagrees with row {u}");
            }
        }
        graphs.push(Graph::from_edges(n, &edges));
    }
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use specter_core::graph::petersen;

    #[test]
    fn roundtrip() {
        let g = petersen();
        let mut s = String::new();
        write_dump(&g, &mut s);
        write_dump(&Graph::complete(3), &mut s);
        let back = read_dumps(&s).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0], g);
        assert_eq!(back[1], Graph::complete(3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(read_dumps("m=3\n").is_err());
        assert!(read_dumps("n=3\nff\n").is_err());
        assert!(read_dumps("n=9\n").is_err());
    }
}
