/**
 * plotdata: reshape a results CSV into gnuplot-friendly blocks.
 *
 * Reads the CSV produced by `fmnar simulate`/`fmnar run` (file argument or
 * stdin) and writes one block per (model, variant) pair:
 *
 *   # model=i variant=proposed
 *   50 0.0812 0.0031
 *   100 0.0625 0.0024
 *
 * Blocks are separated by two blank lines so they are addressable with
 * gnuplot's `index`, e.g.:
 *
 *   plot 'curves.dat' index 0 using 1:2:3 with yerrorlines
 */

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Row {
    long n = 0;
    std::string mean, se;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream s(line);
    while (std::getline(s, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

int process(std::istream& in) {
    std::string line;
    bool header_seen = false;
    std::map<std::pair<std::string, std::string>, std::vector<Row>> blocks;
    std::vector<std::pair<std::string, std::string>> order;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("model,", 0) != 0) {
                std::cerr << "plotdata: line " << lineno
                          << ": expected results header starting with 'model,'\n";
                return 1;
            }
            header_seen = true;
            continue;
        }
        const auto fields = split(line);
        if (fields.size() < 5) {
            std::cerr << "plotdata: line " << lineno << ": too few fields\n";
            return 1;
        }
        const std::pair<std::string, std::string> key{fields[0], fields[2]};
        if (blocks.find(key) == blocks.end()) order.push_back(key);
        Row r;
        r.n = std::stol(fields[1]);
        r.mean = fields[3];
        r.se = fields[4];
        blocks[key].push_back(std::move(r));
    }
    if (!header_seen) {
        std::cerr << "plotdata: no header found\n";
        return 1;
    }
    bool first = true;
    for (const auto& key : order) {
        auto& rows = blocks[key];
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.n < b.n; });
        if (!first) std::cout << "\n\n";
        first = false;
        std::cout << "# model=" << key.first << " variant=" << key.second << "\n";
        for (const auto& r : rows)
            std::cout << r.n << " " << r.mean << " "
                      << (r.se == "NA" ? "0" : r.se) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 2 || (argc == 2 && std::string(argv[1]) == "--help")) {
        std::cerr << "usage: plotdata [results.csv]  (reads stdin when no file "
                     "is given)\n";
        return argc > 2 ? 2 : 0;
    }
    if (argc == 2) {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "plotdata: cannot open " << argv[1] << "\n";
            return 1;
        }
        return process(in);
    }
    return process(std::cin);
}
