use spinsolve_cli::{run, EXIT_INPUT, EXIT_OK, EXIT_SOLVER, EXIT_USAGE};

const INSTANCE: &str = "1 2 1.5\n0 1 -1\n0 2 -3\n";

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = run(args, stdin.as_bytes(), &mut stdout, &mut stderr);
    Outcome {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

#[test]
fn pt_on_file_and_stdin_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("instance.txt");
    std::fs::write(&path, INSTANCE).unwrap();
    let path = path.to_str().unwrap();

    let from_file = invoke(&["pt", path, "--vartype=SPIN", "--seed=3"], "");
    let from_stdin = invoke(&["pt", "--vartype=SPIN", "--seed=3"], INSTANCE);
    assert_eq!(from_file.code, EXIT_OK, "{}", from_file.stderr);
    assert_eq!(from_stdin.code, EXIT_OK);
    assert_eq!(from_file.stdout, from_stdin.stdout);

    let mut lines = from_file.stdout.lines();
    assert_eq!(lines.next(), Some("0,1,2,energy,num_occurrences"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[3], "-3.5");
    assert_eq!(row[4], "1");
    assert_eq!(lines.next(), None);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = invoke(
        &[
            "bruteforce",
            "--vartype",
            "SPIN",
            "--output",
            out.to_str().unwrap(),
        ],
        INSTANCE,
    );
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(out).unwrap(),
        "0,1,2,energy,num_occurrences\n-1,1,-1,-3.5,1\n"
    );
}

#[test]
fn bruteforce_full_spectrum_in_binary() {
    let o = invoke(
        &["bruteforce", "--vartype=BINARY", "--num_states=4"],
        "0 0 -1\n0 1 2\n",
    );
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(
        o.stdout,
        "0,1,energy,num_occurrences\n1,0,-1.0,1\n0,0,0.0,1\n0,1,0.0,1\n1,1,1.0,1\n"
    );
}

#[test]
fn random_emits_requested_rows() {
    let o = invoke(
        &["random", "--vartype=SPIN", "--num_solutions=4", "--seed=1"],
        INSTANCE,
    );
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.lines().count(), 5);
}

#[test]
fn empty_problem_gives_offset_row() {
    let o = invoke(&["bruteforce", "--vartype=SPIN"], "# nothing here\n");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "energy,num_occurrences\n0.0,1\n");
}

#[test]
fn top_level_help() {
    let o = invoke(&["-h"], "");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(
        o.stdout,
        "usage: spinsolve [-h] {pt,random,bruteforce} ...\n\
         \n\
         optional arguments:\n  \
         -h, --help            show this help message and exit\n\
         \n\
         Solvers:\n  \
         {pt,random,bruteforce}\n"
    );
    assert_eq!(invoke(&["--help"], "").stdout, o.stdout);
}

#[test]
fn pt_help_transcript() {
    let o = invoke(&["pt", "-h"], "");
    assert_eq!(o.code, EXIT_OK);
    let expected = "\
usage: spinsolve pt [-h] [--output OUTPUT] --vartype {SPIN,BINARY} [--num_replicas NUM_REPLICAS] [--num_pt_steps NUM_PT_STEPS] [--num_sweeps NUM_SWEEPS] [--beta_min BETA_MIN] [--beta_max BETA_MAX] [--seed SEED] [input]

Parallel tempering sampler

positional arguments:
  input                 Path of the input BQM file in COO format. If not specified, stdin is used.

optional arguments:
  -h, --help            show this help message and exit
  --output OUTPUT       Path of the output file. If not specified, stdout is used.
  --vartype {SPIN,BINARY}
                        Variable type
  --num_replicas NUM_REPLICAS
                        number of replicas to simulate (default 10)
  --num_pt_steps NUM_PT_STEPS
                        number of parallel tempering steps (default 1000)
  --num_sweeps NUM_SWEEPS
                        number of Monte Carlo sweeps per parallel tempering step (default 100)
  --beta_min BETA_MIN   inverse temperature of the hottest replica (default 0.1)
  --beta_max BETA_MAX   inverse temperature of the coldest replica (default 1.0)
  --seed SEED           seed of the pseudo-random generator; system entropy if omitted
";
    assert_eq!(o.stdout, expected);
}

#[test]
fn bruteforce_help_mentions_num_states() {
    let o = invoke(&["bruteforce", "--help"], "");
    assert_eq!(o.code, EXIT_OK);
    assert!(o
        .stdout
        .contains("  --num_states NUM_STATES\n                        number of lowest-energy states to return (default 1)\n"));
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &[],
        &["nosuch", "x.txt", "--vartype=SPIN"],
        &["pt", "x.txt"],
        &["pt", "--vartype=ISING"],
        &["pt", "--vartype=SPIN", "--num_replicas=ten"],
        &["pt", "--vartype=SPIN", "--frobnicate"],
    ];
    for args in cases {
        let o = invoke(args, INSTANCE);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(
            o.stderr.starts_with("usage: spinsolve"),
            "{args:?}: {}",
            o.stderr
        );
    }
}

#[test]
fn bad_input_exits_two() {
    let o = invoke(&["random", "--vartype=SPIN"], "0 1 1.0\n0 one 2\n");
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    assert!(o.stdout.is_empty());

    let o = invoke(
        &["random", "/definitely/not/here.txt", "--vartype=SPIN"],
        "",
    );
    assert_eq!(o.code, EXIT_INPUT);
}

#[test]
fn solver_errors_exit_three() {
    let wide: String = (0..65).map(|i| format!("{i} {i} 1\n")).collect();
    let o = invoke(&["bruteforce", "--vartype=SPIN"], &wide);
    assert_eq!(o.code, EXIT_SOLVER);
    assert!(o.stderr.contains("at most 64"), "{}", o.stderr);

    let o = invoke(&["pt", "--vartype=SPIN", "--num_replicas=0"], INSTANCE);
    assert_eq!(o.code, EXIT_SOLVER);

    let o = invoke(
        &["random", "--vartype=SPIN", "--num_solutions=-1"],
        INSTANCE,
    );
    assert_eq!(o.code, EXIT_SOLVER);
}
