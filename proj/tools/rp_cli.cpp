#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "rpc/commands.hpp"
#include "rpc/errors.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Robust parabolic curves of maps tangent to the identity"};
    app.set_help_flag("-h,--help", "Show help");

    std::string command;
    std::string field;
    std::string map;
    std::string input_path;
    std::string output_path;
    std::string chart = "u1";
    std::string format = "text";
    rpc::InputSpec spec;

    app.add_option("command", command, "Command to run")
        ->required()
        ->check(CLI::IsMember(rpc::command_names()));
    auto* fopt = app.add_option("--field", field, "Field \"A, B\" for A d/dx + B d/dy");
    auto* mopt = app.add_option("--map", map, "Map \"f1, f2\" tangent to the identity");
    auto* iopt = app.add_option("--input", input_path, "File holding one 'field ...' or 'map ...' line")
                     ->check(CLI::ExistingFile);
    fopt->excludes(mopt)->excludes(iopt);
    mopt->excludes(iopt);
    app.add_option("--order", spec.order, "Truncation order N")->check(CLI::Range(1, 200));
    app.add_option("--depth", spec.depth, "Branch expansion depth")->check(CLI::Range(1, 200));
    app.add_option("--chart", chart, "Blow-up chart")->check(CLI::IsMember({"u1", "u2"}));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", output_path, "Write the output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return rpc::kExitParse;
    }

    if (fopt->count() + mopt->count() + iopt->count() != 1) {
        std::cerr << "error: give exactly one of --field, --map, --input\n";
        return rpc::kExitParse;
    }
    if (iopt->count() > 0) {
        std::ifstream in(input_path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            const rpc::InputSpec file = rpc::read_input_file(buf.str());
            spec.kind = file.kind;
            spec.text = file.text;
        } catch (const rpc::ParseError& e) {
            std::cerr << "error: " << input_path << ": " << e.what() << "\n";
            return rpc::kExitParse;
        }
    } else if (fopt->count() > 0) {
        spec.kind = rpc::InputKind::field;
        spec.text = field;
    } else {
        spec.kind = rpc::InputKind::map;
        spec.text = map;
    }
    spec.chart = chart == "u2" ? rpc::Chart::u2 : rpc::Chart::u1;

    const rpc::CommandResult r = rpc::run_command(command, spec, format == "json");
    std::cerr << r.err;
    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out) {
            std::cerr << "error: cannot write " << output_path << "\n";
            return rpc::kExitFailed;
        }
        out << r.out;
    } else {
        std::cout << r.out;
    }
    return r.exit_code;
}
