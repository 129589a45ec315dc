use std::process::{Command, Output};

fn create_user(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_create_user")).args(args).output().expect("binary runs")
}

fn assert_invalid(out: &Output) {
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert_eq!(out.stderr, b"error: invalid arguments\n");
}

#[test]
fn prints_the_record() {
    let out = create_user(&["--id", "7", "--username", "ann"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "username=ann fullname= id=7\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn negative_ids_are_accepted() {
    let out = create_user(&["--username", "x", "--id", "-3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "username=x fullname= id=-3\n");
}

#[test]
fn rejects_bad_input() {
    assert_invalid(&create_user(&[]));
    assert_invalid(&create_user(&["--username"]));
    assert_invalid(&create_user(&["--username", "x", "--id", "+3"]));
    assert_invalid(&create_user(&["--username", "x", "--id", "3", "--verbose", "y"]));
    assert_invalid(&create_user(&["--username", "x", "--username", "y", "--id", "3"]));
    assert_invalid(&create_user(&["--username=x", "--id", "3"]));
}

#[test]
fn help_only_as_sole_argument() {
    let out = create_user(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "usage: create_user [options]\noptions:\n  --username\n  --fullname\n  --id\n"
    );
    assert_invalid(&create_user(&["--help", "--id", "3"]));
}
