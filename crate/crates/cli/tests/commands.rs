use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

fn folwb(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_folwb")).args(args).output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(folwb(&["fmt", "-f", "p -> p"]).status.code(), Some(0));
    assert_eq!(folwb(&["fmt", "-f", "p ->"]).status.code(), Some(2));
    assert_eq!(folwb(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(folwb(&["prove", "-f", "~~p -> p", "--budget", "5"]).status.code(), Some(1));
}

#[test]
fn parse_errors_go_to_stderr() {
    let out = folwb(&["fmt", "-f", "P(x,"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:4"));
}

fn get(port: u16, path: &str) -> std::io::Result<String> {
    let mut s = TcpStream::connect(("127.0.0.1", port))?;
    write!(s, "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n")?;
    let mut body = String::new();
    s.read_to_string(&mut body)?;
    Ok(body)
}

#[test]
fn serve_answers_health_checks() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let addr = format!("127.0.0.1:{port}");
    let mut child = Command::new(env!("CARGO_BIN_EXE_folwb"))
        .args(["serve", "--addr", &addr])
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let deadline = Instant::now() + Duration::from_secs(20);
    let reply = loop {
        match get(port, "/healthz") {
            Ok(r) => break r,
            Err(_) if Instant::now() < deadline => std::thread::sleep(Duration::from_millis(50)),
            Err(e) => {
                child.kill().ok();
                panic!("service never came up: {e}");
            }
        }
    };
    child.kill().ok();
    child.wait().ok();
    assert!(reply.starts_with("HTTP/1.1 200"), "{reply}");
}
