#ifndef LOWCROSS_IO_HPP
#define LOWCROSS_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lowcross/partition.hpp"
#include "lowcross/set_system.hpp"

namespace lowcross {

/// Parse failure with the 1-based line where it happened.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line) + ": " + what_), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

// Set-system text format v1.
//   # lowcross set-system v1            (comment lines, optional on read)
//   n m
//   k i_1 ... i_k                       (m lines, indices strictly increasing)
// Partition text format v1.
//   # lowcross partition v1
//   n t
//   p_0 p_1 ... p_{n-1}                 (part ids in [0, t))
// Both round-trip losslessly; the writers emit canonical bytes so
// write(read(write(x))) == write(x).

void write_set_system(std::ostream& os, const SetSystem& sys);
SetSystem read_set_system(std::istream& is);

void write_partition(std::ostream& os, const Partition& p);
Partition read_partition(std::istream& is);

// Path helpers; throw std::runtime_error when the file cannot be opened.
void save_set_system(const std::string& path, const SetSystem& sys);
SetSystem load_set_system(const std::string& path);
void save_partition(const std::string& path, const Partition& p);
Partition load_partition(const std::string& path);

}  // namespace lowcross

#endif
