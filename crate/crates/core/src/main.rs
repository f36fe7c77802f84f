fn main() -> std::process::ExitCode {
    holomimo::cli::main_entry()
}
