//! Drives the command-line front end in-process from a config file.

fn main() {
    let dir = std::env::temp_dir().join("rmt-source-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let cfg = dir.join("fr.cfg");
    std::fs::write(
        &cfg,
        "command = duality\ncheck = fr\nbeta = 3\nN = 3\nx = 0.7,-0.7,0\nlambda = 1.2\nsamples = 100000\nseed = 7\n",
    )
    .expect("write config");
    let path = cfg.to_str().expect("utf-8 path");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = rmt_source::cli::run(
        ["rmt-source", "--config", path, "--workers", "2"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit {code}");
}
