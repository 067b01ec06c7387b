fn main() {
    std::process::exit(seqswarm::harness::cli_main(std::env::args_os()));
}
