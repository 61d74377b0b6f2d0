use clap::Parser;
use serde_json::Value;

use super::*;

fn cli(args: &[&str]) -> Cli {
    let mut v = vec!["zeta-extremal"];
    v.extend_from_slice(args);
    Cli::try_parse_from(v).unwrap()
}

fn run_args(args: &[&str]) -> Outcome {
    run(&cli(args))
}

fn json_of(o: &Outcome) -> Value {
    serde_json::from_str(&o.output).unwrap()
}

#[test]
fn constants_e_twelve_digits() {
    let o = run_args(&["constants", "--which", "E", "--digits", "12"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    assert!(v["constants"][0]["value"].as_str().unwrap().starts_with("2.81301402025"));
    assert_eq!(v["flags"]["digits"], "12");
    let t = run_args(&["constants", "--which", "E", "--digits", "12", "--format", "text"]);
    assert!(t.output.starts_with("E = 2.81301402025"));
}

#[test]
fn digits_validated_by_parser() {
    for d in ["5", "201", "x"] {
        let e = Cli::try_parse_from(["zeta-extremal", "constants", "--digits", d]).unwrap_err();
        assert!(e.use_stderr(), "{e}");
    }
    assert!(Cli::try_parse_from(["zeta-extremal", "constants", "--which", "B"]).is_err());
}

#[test]
fn redirect_and_domain_errors() {
    let o = run_args(&["sigma-a", "--a", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.failed);
    let v = json_of(&o);
    assert_eq!(v["error"], "redirect");
    assert!(v["message"].as_str().unwrap().contains("sigma1"));
    assert_eq!(run_args(&["sigma-a", "--a", "-2"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["sigma-a", "--a", "abc"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["l-bound", "--q", "2"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["constants", "--format", "svg"]).code, EXIT_USAGE);
}

#[test]
fn l_bound_values() {
    let v = json_of(&run_args(&["l-bound", "--q", "4", "--a", "1", "--digits", "15"]));
    assert!(v["result"]["value"].as_str().unwrap().starts_with("1.8877909267"));
    let v = json_of(&run_args(&["l-bound", "--q", "7", "--digits", "15"]));
    assert!(v["result"]["value"].as_str().unwrap().starts_with("1.8384345030"));
}

#[test]
fn exit_code_table() {
    assert_eq!(exit_code(&Error::PrecisionEscalation { required_digits: 40 }), EXIT_PRECISION);
    assert_eq!(exit_code(&Error::NoSentinelRow), EXIT_PIPELINE);
    assert_eq!(exit_code(&Error::NoRoot("x".into())), EXIT_PIPELINE);
    assert_eq!(exit_code(&Error::InvalidParams("x".into())), EXIT_USAGE);
    let r = error_report("constants", &Error::PrecisionEscalation { required_digits: 40 });
    assert_eq!(r["required_digits"], "40");
}

#[test]
fn weak_search_is_valid_json() {
    let o = run_args(&["search-height", "--nu", "20", "--r", "5", "--n", "3", "--no-refine"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    let c = &v["candidates"][0];
    assert!(c["x"].as_str().unwrap().parse::<i128>().is_ok());
    assert_eq!(c["params"]["n"], 3);
    assert_eq!(v["diagnostics"]["distances"].as_array().unwrap().len(), 3);
    assert_eq!(v["flags"]["nu"], "20");
    let again = run_args(&["search-height", "--nu", "20", "--r", "5", "--n", "3", "--no-refine"]);
    assert_eq!(o.output, again.output);
}

#[test]
fn search_rejects_bad_params() {
    assert_eq!(run_args(&["search-height", "--nu", "5", "--r", "5", "--n", "3"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["search-height", "--n", "3", "--nu", "20", "--r", "5", "--theta", "1,2"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["search-height", "--n", "3", "--nu", "20", "--r", "5", "--theta", "1,2,7"]).code, EXIT_USAGE);
}

#[test]
fn trace_formats_and_mirror() {
    let csv = run_args(&["trace", "--window", "1.2,2,1,8", "--grid-step", "0.05"]);
    assert_eq!(csv.code, EXIT_OK);
    assert!(csv.output.starts_with("# trace window=1.2,2,1,8"));
    let seg_count = csv.output.matches("# kind=").count();
    assert!(seg_count > 0);

    let svg = run_args(&["trace", "--window", "1.2,2,1,8", "--grid-step", "0.05", "--format", "svg"]);
    assert!(svg.output.starts_with("<svg") && svg.output.trim_end().ends_with("</svg>"));
    assert_eq!(svg.output.matches("<path").count(), seg_count);

    let mirror = run_args(&["trace", "--window", "1.2,2,-8,-1", "--grid-step", "0.05"]);
    assert_eq!(mirror.output.matches("# kind=").count(), seg_count);
    let pts = |s: &str| -> Vec<(f64, f64)> {
        s.lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("sigma"))
            .map(|l| {
                let (a, b) = l.split_once(',').unwrap();
                (a.parse().unwrap(), b.parse().unwrap())
            })
            .collect()
    };
    let (p, q) = (pts(&csv.output), pts(&mirror.output));
    assert_eq!(p.len(), q.len());
    for a in &p {
        assert!(q.iter().any(|m| (m.0 - a.0).abs() < 1e-9 && (m.1 + a.1).abs() < 1e-9), "{a:?}");
    }

    assert_eq!(run_args(&["trace", "--window", "0.5,2,1,8"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["trace", "--format", "json"]).code, EXIT_USAGE);
}

#[test]
fn check_a3_passes() {
    let o = run_args(&["check", "--suite", "a3"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json_of(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"][0]["detail"]["violations"], "0");
}

#[test]
fn help_mentions_units() {
    let mut cmd = <Cli as clap::CommandFactory>::command();
    let mut buf = Vec::new();
    cmd.write_long_help(&mut buf).unwrap();
    let h = String::from_utf8(buf).unwrap();
    assert!(h.contains("dimensionless") && h.contains("decimal digits"));
}
