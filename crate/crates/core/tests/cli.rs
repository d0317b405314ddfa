use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn divorient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divorient")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().skip(2).map(str::to_string).collect()
}

#[test]
fn exact_rows() {
    assert_eq!(stdout(&divorient(&["exact", "--n", "5", "--rho", "0.5"])), "5,2,1,2,-2\nvalue,0.5,1.5\n");
    assert_eq!(stdout(&divorient(&["exact", "--n", "1"])), "1,0,1\n");
    assert_eq!(stdout(&divorient(&["exact", "--n", "9"])), "9,8,1,12,-6,-18,17,10,-36,28,-7\n");
    let o = divorient(&["exact", "--n", "30"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges"));
}

#[test]
fn sim_grid_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lscc.csv");
    let o = divorient(&[
        "sim",
        "--stat",
        "lscc",
        "--n",
        "256..2048:256",
        "--rho",
        "0.1,0.2,0.3,0.4,0.5",
        "--samples",
        "2",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    stdout(&o);
    assert_eq!(data_rows(&out).len(), 8 * 5);

    let zero = dir.path().join("zero.csv");
    stdout(&divorient(&[
        "sim",
        "--stat",
        "lscc",
        "--n",
        "5",
        "--rho",
        "0",
        "--samples",
        "3",
        "--out",
        zero.to_str().unwrap(),
    ]));
    for row in data_rows(&zero) {
        assert_eq!(row.split(',').nth(3), Some("1"));
    }

    let diam = dir.path().join("diam.csv");
    stdout(&divorient(&[
        "sim",
        "--stat",
        "diameter",
        "--n",
        "1024..4096:1024",
        "--rho",
        "0.5",
        "--samples",
        "2",
        "--seed",
        "7",
        "--out",
        diam.to_str().unwrap(),
    ]));
    let text = fs::read_to_string(&diam).unwrap();
    assert!(text.starts_with("# divorient v1, statistic=diameter, master_seed=7, diameter_convention=largest_scc\n"));
    assert_eq!(data_rows(&diam).len(), 4);
}

#[test]
fn sim_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        stdout(&divorient(&[
            "sim",
            "--n",
            "100,300",
            "--rho",
            "0.3",
            "--samples",
            "5",
            "--seed",
            "4",
            "--out",
            p.to_str().unwrap(),
        ]));
        fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}

#[test]
fn invalid_grids_fail_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.csv");
    for bad in [["--n", "10..5:1"], ["--rho", "1.5"]] {
        let o = divorient(&["sim", bad[0], bad[1], "--samples", "1", "--out", p.to_str().unwrap()]);
        assert!(!o.status.success());
        assert!(!p.exists());
    }
    let o = divorient(&["sim", "--n", "5", "--samples", "1", "--out", "/nonexistent-dir/x.csv"]);
    assert!(!o.status.success());
}

#[test]
fn bounds_rows() {
    let cor5 = stdout(&divorient(&["bounds", "--n", "4096", "--rho", "0.5", "--mode", "cor5"]));
    let lines: Vec<&str> = cor5.lines().collect();
    assert_eq!(lines[0], "kind,N,rho,param,value_raw,value_clamped,certified");
    assert!(lines[1].starts_with("cor5,4096,0.5,"));
    let best = divorient::bounds::best_corollary5_bound(4096, 0.5).unwrap();
    assert_eq!(lines[1], best.csv_row());

    let cor4 = stdout(&divorient(&["bounds", "--n", "100", "--rho", "0.5", "--mode", "cor4", "--epsilon", "0.5"]));
    assert!(cor4.lines().nth(1).unwrap().ends_with(",false"));

    let t1 = stdout(&divorient(&["bounds", "--n", "9", "--rho", "0.5", "--mode", "theorem1"]));
    let value: f64 = t1.lines().nth(1).unwrap().split(',').nth(5).unwrap().parse().unwrap();
    let exact = stdout(&divorient(&["exact", "--n", "9", "--rho", "0.5"]));
    let exact: f64 = exact.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!(value <= exact);

    let all = stdout(&divorient(&["bounds", "--n", "1000", "--rho", "0.3"]));
    assert_eq!(all.lines().count(), 4);

    assert!(!divorient(&["bounds", "--n", "100", "--rho", "0.5", "--mode", "cor4", "--epsilon", "0"]).status.success());
}

#[test]
fn tau_reports() {
    assert!(stdout(&divorient(&["tau", "--n", "10", "--at-least", "4"])).contains("tau_at_least[4]=3"));
    assert!(stdout(&divorient(&["tau", "--n", "1"])).contains("tau_histogram={1:1}"));
    let c = stdout(&divorient(&["tau", "--constants"]));
    let value = |key: &str| -> f64 {
        let line = c.lines().find(|l| l.starts_with(key)).unwrap();
        line[key.len()..].split_whitespace().next().unwrap().parse().unwrap()
    };
    assert!(c.contains("limit 0.76371069"));
    assert!((value("S_V=") - 1.33879).abs() < 1e-4);
    assert!((value("sum_1/p^2=") - 0.45224742).abs() < 1e-7);
    assert_eq!(value("M="), 0.26149721284);
}

fn write_affine_csv(path: &Path, ns: &[u32]) {
    let mut text = String::from(
        "# divorient v1, statistic=diameter, master_seed=0, diameter_convention=largest_scc\nn,rho,samples,mean,variance\n",
    );
    for &n in ns {
        text.push_str(&format!("{n},0.5,10,{},0\n", 2.0 * f64::from(n).ln() + 3.0));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn fit_and_plot_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("affine.csv");
    write_affine_csv(&csv, &[1024, 2048, 4096, 8192]);
    let fit = stdout(&divorient(&["fit", "--input", csv.to_str().unwrap(), "--rho", "0.5"]));
    let row: Vec<f64> = fit.lines().nth(1).unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    assert!((row[1] - 2.0).abs() < 1e-12 && (row[2] - 3.0).abs() < 1e-12 && row[3] < 1e-24);

    let svg = dir.path().join("d.svg");
    stdout(&divorient(&[
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--kind",
        "diameter",
        "--fit",
        "--out",
        svg.to_str().unwrap(),
    ]));
    let svg = fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("class=\"fit\"").count(), 1);
    let fit_alpha = fit.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert!(svg.contains(&format!("data-slope=\"{fit_alpha}\"")));

    let two = dir.path().join("two.csv");
    write_affine_csv(&two, &[10, 20]);
    let fit = stdout(&divorient(&["fit", "--input", two.to_str().unwrap()]));
    assert!(fit.lines().nth(1).unwrap().ends_with(",0"));

    let one = dir.path().join("one.csv");
    write_affine_csv(&one, &[10]);
    assert!(!divorient(&["fit", "--input", one.to_str().unwrap()]).status.success());
}

#[test]
fn scc_plot_and_empty_input() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("run.csv");
    stdout(&divorient(&[
        "sim",
        "--n",
        "64..256:64",
        "--rho",
        "0.2,0.5",
        "--samples",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]));
    let svg = dir.path().join("r.svg");
    stdout(&divorient(&[
        "plot",
        "--input",
        csv.to_str().unwrap(),
        "--kind",
        "scc_ratio",
        "--out",
        svg.to_str().unwrap(),
    ]));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml") && text.contains("viewBox=\"0 0 960 640\""));
    assert_eq!(text.matches("<polyline").count(), 2);

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let out = dir.path().join("never.svg");
    let o =
        divorient(&["plot", "--input", empty.to_str().unwrap(), "--kind", "diameter", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!out.exists());
}

#[test]
fn help_documents_conventions() {
    for sub in ["exact", "sim", "bounds", "tau", "fit", "plot"] {
        let h = stdout(&divorient(&[sub, "--help"]));
        assert!(h.contains("Diameter:") && h.contains("Seeds:"), "{sub}");
    }
}
