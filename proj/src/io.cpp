#include "lowcross/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lowcross {

namespace {

// Pulls whitespace-separated unsigned integers off one line; complains with
// the line number on anything else.
struct LineTokens {
    const std::string& s;
    size_t line_no;
    size_t pos = 0;

    bool at_end() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos >= s.size();
    }

    uint64_t next_uint(const char* what) {
        if (at_end())
            throw ParseError(line_no, std::string("expected ") + what + ", found end of line");
        if (!std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(line_no, std::string("expected ") + what + ", found '" +
                                          s.substr(pos, 8) + "'");
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + uint64_t(s[pos] - '0');
            if (v > UINT32_MAX) throw ParseError(line_no, std::string(what) + " out of range");
            ++pos;
        }
        if (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])))
            throw ParseError(line_no, std::string("malformed ") + what);
        return v;
    }

    void expect_end(const char* ctx) {
        if (!at_end())
            throw ParseError(line_no, std::string("trailing characters after ") + ctx);
    }
};

// Returns the next non-comment line, counting every physical line. Family
// provenance comments ("# family: ...") are captured into label_out if given.
bool next_data_line(std::istream& is, std::string& line, size_t& line_no,
                    std::string* label_out = nullptr) {
    while (std::getline(is, line)) {
        ++line_no;
        size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) continue;  // blank
        if (line[i] == '#') {
            const std::string key = "# family: ";
            if (label_out && line.compare(i, key.size(), key) == 0)
                *label_out = line.substr(i + key.size());
            continue;
        }
        return true;
    }
    return false;
}

}  // namespace

void write_set_system(std::ostream& os, const SetSystem& sys) {
    os << "# lowcross set-system v1\n";
    if (!sys.label().empty()) os << "# family: " << sys.label() << "\n";
    os << sys.n() << ' ' << sys.m() << '\n';
    for (uint32_t r = 0; r < sys.m(); ++r) {
        os << sys.range_size(r);
        sys.for_each_member(r, [&](uint32_t e) { os << ' ' << e; });
        os << '\n';
    }
}

SetSystem read_set_system(std::istream& is) {
    std::string line, label;
    size_t line_no = 0;

    if (!next_data_line(is, line, line_no, &label)) throw ParseError(line_no + 1, "missing header");
    LineTokens header{line, line_no};
    auto n = uint32_t(header.next_uint("element count n"));
    auto m = uint32_t(header.next_uint("range count m"));
    header.expect_end("header");
    if (n == 0) throw ParseError(line_no, "n must be >= 1");

    std::vector<std::vector<uint32_t>> ranges(m);
    for (uint32_t r = 0; r < m; ++r) {
        if (!next_data_line(is, line, line_no))
            throw ParseError(line_no + 1,
                             "expected " + std::to_string(m) + " range lines, got " +
                                 std::to_string(r));
        LineTokens tok{line, line_no};
        auto k = uint32_t(tok.next_uint("range size"));
        ranges[r].reserve(k);
        uint32_t prev = 0;
        for (uint32_t j = 0; j < k; ++j) {
            auto e = uint32_t(tok.next_uint("element index"));
            if (e >= n)
                throw ParseError(line_no, "element index " + std::to_string(e) +
                                              " out of range [0, " + std::to_string(n) + ")");
            if (j > 0 && e <= prev)
                throw ParseError(line_no, "element indices must be strictly increasing");
            prev = e;
            ranges[r].push_back(e);
        }
        tok.expect_end("range line");
    }
    return SetSystem(n, ranges, label);
}

void write_partition(std::ostream& os, const Partition& p) {
    os << "# lowcross partition v1\n";
    os << p.n << ' ' << p.t << '\n';
    for (uint32_t e = 0; e < p.n; ++e) os << p.part_of[e] << (e + 1 < p.n ? ' ' : '\n');
}

Partition read_partition(std::istream& is) {
    std::string line;
    size_t line_no = 0;
    if (!next_data_line(is, line, line_no)) throw ParseError(line_no + 1, "missing header");
    LineTokens header{line, line_no};
    auto n = uint32_t(header.next_uint("element count n"));
    auto t = uint32_t(header.next_uint("part count t"));
    header.expect_end("header");
    if (n == 0 || t == 0) throw ParseError(line_no, "n and t must be >= 1");

    if (!next_data_line(is, line, line_no)) throw ParseError(line_no + 1, "missing assignment line");
    LineTokens tok{line, line_no};
    std::vector<uint32_t> part_of(n);
    for (uint32_t e = 0; e < n; ++e) {
        auto pid = uint32_t(tok.next_uint("part id"));
        if (pid >= t)
            throw ParseError(line_no,
                             "part id " + std::to_string(pid) + " not in [0, " +
                                 std::to_string(t) + ")");
        part_of[e] = pid;
    }
    tok.expect_end("assignment line");
    return Partition(t, std::move(part_of));
}

namespace {
std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return f;
}
std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}
}  // namespace

void save_set_system(const std::string& path, const SetSystem& sys) {
    auto f = open_out(path);
    write_set_system(f, sys);
}
SetSystem load_set_system(const std::string& path) {
    auto f = open_in(path);
    return read_set_system(f);
}
void save_partition(const std::string& path, const Partition& p) {
    auto f = open_out(path);
    write_partition(f, p);
}
Partition load_partition(const std::string& path) {
    auto f = open_in(path);
    return read_partition(f);
}

}  // namespace lowcross
