// Runs every case in golden/cases.txt from golden/specs and compares stdout
// with golden/expected/<name>.txt.  DRINGKIT_BLESS=1 rewrites the files.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_outputs() {
    let dir = root();
    let cases = fs::read_to_string(dir.join("cases.txt")).unwrap();
    let bless = std::env::var_os("DRINGKIT_BLESS").is_some();
    let mut failures = Vec::new();
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
        let (name, code): (&str, i32) = (parts[0], parts[1].parse().unwrap());
        let args = shlex::split(parts[2]).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_dring-kit"))
            .args(&args)
            .current_dir(dir.join("specs"))
            .env_remove("DRINGKIT_BUDGET")
            .env_remove("DRINGKIT_RANK_CAP")
            .output()
            .unwrap();
        let mut got = String::from_utf8(out.stdout).unwrap();
        got.push_str(&String::from_utf8(out.stderr).unwrap());
        let status = out.status.code().unwrap();
        if status != code {
            failures.push(format!("{name}: exit {status}, want {code}\n{got}"));
            continue;
        }
        let path = dir.join("expected").join(format!("{name}.txt"));
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{name}: output differs\n--- want\n{want}--- got\n{got}")),
            Err(_) => failures.push(format!("{name}: missing {}", path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
