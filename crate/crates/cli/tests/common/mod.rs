#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

pub fn s1deg(args: &[&str]) -> Run {
    s1deg_stdin(args, None)
}

pub fn s1deg_stdin(args: &[&str], input: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_s1deg"))
        .args(args)
        .env_remove("S1DEG_PRESETS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn s1deg");
    {
        let mut stdin = child.stdin.take().unwrap();
        if let Some(text) = input {
            stdin.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs `realize`, feeds the certificate to `verify`, returns both runs.
pub fn realize_and_verify(set: &str, dim: u32) -> (Run, Run) {
    let dim = dim.to_string();
    let r = s1deg(&["realize", "--set", set, "--dim", &dim]);
    let v = if r.code == 0 {
        s1deg_stdin(&["verify", "--in", "-"], Some(&r.stdout))
    } else {
        Run { code: -1, stdout: String::new(), stderr: String::new() }
    };
    (r, v)
}
