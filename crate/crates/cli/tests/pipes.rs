//! Composition invariants of the streaming subcommands: the
//! interlace -> extend -> compgraph -> clique pipe must reach the same
//! verdict as the monolithic pipeline, and sharded runs must union to the
//! unsharded output.

use std::collections::BTreeSet;
use std::process::{Command, Stdio};

use specter_core::graph::petersen;
use specter_core::{write_graph6, Graph, VertexSet};

fn run_bin(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_specter"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawning specter");
    {
        use std::io::Write;
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(stdin.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("specter run");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn composed_pipe_matches_monolithic_pipeline() {
    // Seed: path on 3 vertices, a subgraph of Petersen without
    // eigenvalue 1.
    let seed = "Bg\n";

    // Stage 1: the interlacing filter keeps the seed.
    let (kept, code) = run_bin(&["interlace", "10", "3", "0", "1"], seed);
    assert_eq!(code, 0);
    assert_eq!(kept.trim(), "Bg");

    // Stages 2-3: extend to the star-complement order 5.
    let (lvl4, code) = run_bin(&["extend", "10", "3", "0", "1", "--r", "1", "--target", "5"], &kept);
    assert_eq!(code, 0);
    assert!(!lvl4.trim().is_empty());
    let (lvl5, code) = run_bin(&["extend", "10", "3", "0", "1", "--r", "1", "--target", "5"], &lvl4);
    assert_eq!(code, 0);
    assert!(!lvl5.trim().is_empty());

    // Stage 4: comparability graphs of the candidates.
    let (dumps, code) = run_bin(&["compgraph", "--r", "1", "--min-order", "5"], &lvl5);
    assert_eq!(code, 0);
    assert!(dumps.starts_with("n="));

    // Stage 5: the clique decision; exit 1 signals a witness.
    let (verdicts, code) = run_bin(&["clique", "--cutoff", "5"], &dumps);
    let piped_witness = verdicts.lines().any(|l| l.starts_with("reached"));
    assert_eq!(code, if piped_witness { 1 } else { 0 });

    // Monolithic pipeline on the same seed.
    let (report, code) = run_bin(&["pipeline", "10", "3", "0", "1", "--r", "1"], seed);
    let mono_witness = report.contains("witness-found");
    assert_eq!(code, if mono_witness { 1 } else { 0 });

    assert_eq!(piped_witness, mono_witness);
    assert!(mono_witness, "Petersen positive control must find a witness");
}

#[test]
fn sharded_runs_union_to_unsharded() {
    // All induced subgraphs of Petersen on up to 5 vertices.
    let g = petersen();
    let mut input = String::new();
    for mask in 0u32..(1 << 10) {
        if mask.count_ones() <= 5 {
            let set: VertexSet = (0..10).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.induced_subgraph(&set).unwrap();
            input.push_str(&write_graph6(&h).unwrap());
            input.push('\n');
        }
    }

    let (all, code) = run_bin(&["interlace", "10", "3", "0", "1"], &input);
    assert_eq!(code, 0);
    let full: BTreeSet<&str> = all.lines().collect();

    let mut union: BTreeSet<String> = BTreeSet::new();
    let mut sizes = Vec::new();
    for shard in ["0/3", "1/3", "2/3"] {
        let (part, code) = run_bin(
            &["interlace", "10", "3", "0", "1", "--shard", shard],
            &input,
        );
        assert_eq!(code, 0);
        let lines: Vec<String> = part.lines().map(str::to_string).collect();
        sizes.push(lines.len());
        for l in lines {
            union.insert(l);
        }
    }
    let union_refs: BTreeSet<&str> = union.iter().map(String::as_str).collect();
    assert_eq!(union_refs, full, "shard union must equal the full output");
    // isomorphic inputs land in the same shard, so shards overlap only
    // through isomorphic duplicates; sizes must cover the full set
    assert!(sizes.iter().sum::<usize>() >= full.len());
}

#[test]
fn extend_rejects_oversized_input() {
    let k5 = write_graph6(&Graph::complete(5)).unwrap();
    let (_, code) = run_bin(
        &["extend", "10", "3", "0", "1", "--r", "1", "--target", "5"],
        &format!("{k5}\n"),
    );
    assert_eq!(code, 2, "order >= target is an input error");
}

#[test]
fn malformed_graph6_is_input_error() {
    let (_, code) = run_bin(&["interlace", "10", "3", "0", "1"], "B\x01\n");
    assert_eq!(code, 2);
    let (_, code) = run_bin(&["clique"], "bogus\n");
    assert_eq!(code, 2);
}

#[test]
fn scenario_from_file() {
    let path = std::env::temp_dir().join(format!("specter-scn-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "name=file-k4\nparams=75,32,10,16\nconstruction=bvectors\ndegrees=0,0,0,4\ncap=4=0\n\
         expect=bvector-set\nbvector=0,29,39,3,0\nbvector=1,26,42,2,0\nbvector=2,23,45,1,0\nbvector=3,20,48,0,0\n",
    )
    .unwrap();
    let (stdout, code) = run_bin(&["scenario", path.to_str().unwrap()], "");
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("result: ok"));
    let _ = std::fs::remove_file(&path);

    let (_, code) = run_bin(&["scenario", "no-such-scenario"], "");
    assert_eq!(code, 2);
}

#[test]
fn checkpoint_levels_are_graph6_files() {
    let dir = std::env::temp_dir().join(format!("specter-ckpt-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let (_, code) = run_bin(
        &[
            "pipeline",
            "10",
            "3",
            "0",
            "1",
            "--r",
            "1",
            "--checkpoint-dir",
            dir.to_str().unwrap(),
        ],
        "Bg\n",
    );
    assert_eq!(code, 1, "witness expected on the Petersen fixture");
    let manifest = std::fs::read_to_string(dir.join("seed0/manifest")).unwrap();
    assert!(manifest.contains("status=witness-found"));
    assert!(manifest.contains("target_order=5"));
    let level5 = std::fs::read_to_string(dir.join("seed0/level5.g6")).unwrap();
    for line in level5.lines() {
        specter_core::parse_graph6(line).expect("checkpoint lines are graph6");
    }
    let _ = std::fs::remove_dir_all(&dir);
}
