#pragma once

#include "rdlab/boho.hpp"
#include "rdlab/source.hpp"
#include "rdlab/sweep.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rdlab {
namespace io {

// 17-significant-digit decimal, '.' separator, locale-independent.
std::string fmt17(double v);

std::string write_joint(const JointDist& d);
JointDist read_joint(const std::string& text);

std::string write_cond(const CondDist& d);
CondDist read_cond(const std::string& text);

std::string write_component_pair(const ComponentPair& c);
ComponentPair read_component_pair(const std::string& text);

// Line-oriented `key value...` text with '#' comments. Values keep their
// source line for error reporting.
class KeyValueFile {
  public:
    static KeyValueFile parse(const std::string& text, const std::string& originName = "<config>");

    bool has(const std::string& key) const;
    const std::vector<std::string>& values(const std::string& key) const;  // throws if missing
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long long integer(const std::string& key) const;
    long long integer_or(const std::string& key, long long fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    int line_of(const std::string& key) const;
    const std::string& origin() const { return origin_; }

  private:
    struct Entry {
        std::vector<std::string> values;
        int line = 0;
    };
    std::map<std::string, Entry> entries_;
    std::string origin_;
};

// Distributed source files: x1_size/x2_size (+ y1_size/y2_size for the
// side-information variant), pmf, d1, d2. Also accepts the built-in
// `boho:p=...,eps=...` form.
DistributedSource parse_source(const std::string& spec);
SourceWithSideInfo parse_source_si(const std::string& text, const std::string& originName);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string fnv1a_hex(const std::string& bytes);

struct Manifest {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    std::string timestamp;
    std::vector<std::pair<std::string, std::string>> config;  // resolved key/value pairs
    std::vector<std::pair<std::string, std::string>> inputDigests;

    std::string to_text() const;
};

std::string region_csv(const RegionRun& run, const std::string& scheme);
std::string boho_csv(const std::vector<std::pair<double, BohoSweep>>& curves);

// Sidecar structured text keyed by the CSV's provenance_id column.
std::string region_prov_text(const RegionRun& run);
std::string boho_prov_text(const std::vector<std::pair<double, BohoSweep>>& curves);

}  // namespace io
}  // namespace rdlab
