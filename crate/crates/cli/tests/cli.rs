use std::process::{Command, Output};

fn cmcls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmcls"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sweep_output_is_byte_identical_for_a_seed() {
    let args = ["sweep", "--fn", "f3", "--nmax", "3", "--points", "2000", "--seed", "17"];
    let a = cmcls(&args);
    let b = cmcls(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("# function=f3 points=2000 seed=17\nn,order,strategy,e_mean,e_max\n"));
    // 3 grids x 2 strategies x 5 orders
    assert_eq!(text.lines().count(), 2 + 30);
    let other = cmcls(&["sweep", "--fn", "f3", "--nmax", "3", "--points", "2000", "--seed", "18"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn table2_writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("cmcls-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table2.csv");
    let out = cmcls(&["table2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("67,s2,")).collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let cols: Vec<f64> = row.split(',').skip(3).map(|c| c.parse().unwrap()).collect();
        assert!(cols[0] <= cols[1]);
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn fit_and_diff_dump_coefficients() {
    let fit = stdout(&cmcls(&["fit", "--n", "100", "--fn", "f1"]));
    assert!(fit.starts_with("# function=f1 n=100 m=22 p=9 r=32\nindex,coefficient\n"));
    assert_eq!(fit.lines().count(), 2 + 33);
    let s1 = cmcls(&["diff", "--n", "66", "--fn", "f2", "--order", "2", "--strategy", "s1"]);
    assert!(s1.status.success());
    assert!(stdout(&s1).contains("order=2 strategy=s1"));
}

#[test]
fn bounds_and_nodal_accept_lists() {
    let b = stdout(&cmcls(&["bounds", "--nlist", "100,200"]));
    assert_eq!(b.lines().next(), Some("n,m,p,r,kappa_1,inv_norm_1,b_n"));
    assert!(b.lines().nth(1).unwrap().starts_with("100,22,9,32,"));
    let n = stdout(&cmcls(&["nodal", "--nlist", "100"]));
    assert_eq!(n.lines().count(), 2);
}

#[test]
fn precondition_failures_exit_nonzero() {
    for args in [
        vec!["fit", "--n", "11", "--fn", "f1"],
        vec!["fit", "--n", "52", "--fn", "f1"],
        vec!["fit", "--n", "100", "--fn", "f7"],
        vec!["sweep", "--fn", "f1", "--nmax", "2"],
        vec!["sweep", "--fn", "f1", "--nmax", "0", "--seed", "1"],
        vec!["bounds", "--nlist", "5"],
        vec!["table2", "--out", "/nonexistent-dir/x.csv"],
    ] {
        let out = cmcls(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} should explain");
    }
}
