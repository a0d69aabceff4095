//! Plain-text network format.
//!
//! ```text
//! n 3 layers 2
//! A 1 2 5.0000000000000000e-1
//! W 2 1 1.0000000000000000e0
//! ```
//!
//! Agents are 1-based in the file. Only nonzero entries are listed; a file with
//! `layers 1` describes a single graph used for both `A` and `W`. Weights are
//! written with 17 significant digits so `f64` values survive a round trip.

use std::fmt::Write as _;
use std::path::Path;

use super::graph::WeightedGraph;
use super::state::TwoLayerNetwork;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn format_network<S: Scalar>(net: &TwoLayerNetwork<S>) -> String {
    let single = net.layers_identical();
    let n = net.n();
    let mut out = String::new();
    writeln!(out, "n {} layers {}", n, if single { 1 } else { 2 }).unwrap();
    let layers: &[(char, &WeightedGraph<S>)] =
        if single { &[('W', net.w())] } else { &[('A', net.a()), ('W', net.w())] };
    for (label, g) in layers {
        for i in 0..n {
            for j in 0..n {
                let v = g.get(i, j);
                if v != S::zero() {
                    writeln!(out, "{} {} {} {:.16e}", label, i + 1, j + 1, v.as_f64()).unwrap();
                }
            }
        }
    }
    out
}

pub fn parse_network<S: Scalar>(text: &str) -> Result<TwoLayerNetwork<S>> {
    let mut lines =
        text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let bad_header = || Error::Parse { line: hline, msg: format!("expected `n <count> layers <1|2>`, got `{header}`") };
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 4 || tok[0] != "n" || tok[2] != "layers" {
        return Err(bad_header());
    }
    let n: usize = tok[1].parse().map_err(|_| bad_header())?;
    let layers: u8 = tok[3].parse().map_err(|_| bad_header())?;
    if n == 0 || !(layers == 1 || layers == 2) {
        return Err(bad_header());
    }

    let mut a = vec![0.0f64; n * n];
    let mut w = vec![0.0f64; n * n];
    for (line, l) in lines {
        let err = |msg: String| Error::Parse { line, msg };
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 {
            return Err(err(format!("expected `<A|W> <i> <j> <weight>`, got `{l}`")));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| err(format!("bad agent index `{s}`")))?;
            if v == 0 || v > n {
                return Err(err(format!("agent index {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let (i, j) = (idx(f[1])?, idx(f[2])?);
        let v: f64 = f[3].parse().map_err(|_| err(format!("bad weight `{}`", f[3])))?;
        match (f[0], layers) {
            ("A", 2) => a[i * n + j] = v,
            ("W", 2) => w[i * n + j] = v,
            ("A" | "W", 1) => {
                a[i * n + j] = v;
                w[i * n + j] = v;
            }
            (other, _) => return Err(err(format!("unknown layer `{other}`"))),
        }
    }
    let conv = |v: Vec<f64>| WeightedGraph::new(n, v.into_iter().map(S::lit).collect());
    TwoLayerNetwork::new(conv(a)?, conv(w)?)
}

pub fn load_network<S: Scalar>(path: &Path) -> Result<TwoLayerNetwork<S>> {
    parse_network(&std::fs::read_to_string(path)?)
}

pub fn save_network<S: Scalar>(net: &TwoLayerNetwork<S>, path: &Path) -> Result<()> {
    std::fs::write(path, format_network(net))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_two_layers() {
        let a = WeightedGraph::new_normalized(3, vec![0.0, 1.0, 3.0, 1.0, 0.0, 7.0, 2.0, 9.0, 0.0]).unwrap();
        let w = WeightedGraph::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.5, 0.0, 0.5], vec![0.0, 1.0, 0.0]]).unwrap();
        let net = TwoLayerNetwork::new(a, w).unwrap();
        let text = format_network(&net);
        assert!(text.starts_with("n 3 layers 2\n"));
        let back: TwoLayerNetwork<f64> = parse_network(&text).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn single_layer_sets_both() {
        let text = "n 2 layers 1\nW 1 2 1\nW 2 1 1\n";
        let net: TwoLayerNetwork<f64> = parse_network(text).unwrap();
        assert!(net.layers_identical());
        assert_eq!(format_network(&net), "n 2 layers 1\nW 1 2 1.0000000000000000e0\nW 2 1 1.0000000000000000e0\n");
    }

    #[test]
    fn loader_rejects_non_stochastic() {
        let text = "n 2 layers 1\nW 1 2 0.9\nW 2 1 1\n";
        assert!(matches!(parse_network::<f64>(text), Err(Error::NotStochastic { .. })));
        assert!(matches!(parse_network::<f64>("n 2 layers 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_network::<f64>("n 2 layers 1\nW 1 3 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
