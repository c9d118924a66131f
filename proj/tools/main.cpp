#include "tancat/script.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int usage() {
    std::cerr << "usage: tancat [script-file]\n"
                 "Reads a script from the file (or stdin when omitted or '-'),\n"
                 "executes its run command, and prints the report.\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) return usage();
    std::string text;
    if (argc == 2 && std::string(argv[1]) != "-") {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "tancat: cannot open '" << argv[1] << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }
    tancat::ScriptReport rep = tancat::run_script(text);
    std::cout << tancat::render_report(rep);
    return rep.exit_code;
}
