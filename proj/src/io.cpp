#include "rdlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rdlab {
namespace io {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<double> parse_doubles(const std::vector<std::string>& tokens, const std::string& what) {
    std::vector<double> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(t, &used));
            if (used != t.size()) throw ParseError("");
        } catch (...) {
            throw ParseError(what + ": malformed number '" + t + "'");
        }
    }
    return out;
}

}  // namespace

std::string write_joint(const JointDist& d) {
    std::ostringstream os;
    os << "axes";
    for (int i = 0; i < d.rank(); ++i) os << ' ' << d.axis(i).size;
    os << "\np";
    for (double v : d.probs()) os << ' ' << fmt17(v);
    os << '\n';
    return os.str();
}

JointDist read_joint(const std::string& text) {
    const KeyValueFile kv = KeyValueFile::parse(text, "<joint>");
    std::vector<Alphabet> axes;
    for (const auto& t : kv.values("axes")) axes.emplace_back(std::stoi(t));
    return JointDist(std::move(axes), kv.numbers("p"));
}

std::string write_cond(const CondDist& d) {
    std::ostringstream os;
    os << "from";
    for (const auto& a : d.from_axes()) os << ' ' << a.size;
    os << "\nto";
    for (const auto& a : d.to_axes()) os << ' ' << a.size;
    os << "\nk";
    for (double v : d.raw()) os << ' ' << fmt17(v);
    os << '\n';
    return os.str();
}

CondDist read_cond(const std::string& text) {
    const KeyValueFile kv = KeyValueFile::parse(text, "<cond>");
    std::vector<Alphabet> from, to;
    for (const auto& t : kv.values("from")) from.emplace_back(std::stoi(t));
    for (const auto& t : kv.values("to")) to.emplace_back(std::stoi(t));
    return CondDist(std::move(from), std::move(to), kv.numbers("k"));
}

std::string write_component_pair(const ComponentPair& c) {
    std::ostringstream os;
    os << "s_size " << c.s.size << "\nf1";
    for (int v : c.f1) os << ' ' << v;
    os << "\nf2";
    for (int v : c.f2) os << ' ' << v;
    os << "\nepsilon " << fmt17(c.epsilon) << '\n';
    return os.str();
}

ComponentPair read_component_pair(const std::string& text) {
    const KeyValueFile kv = KeyValueFile::parse(text, "<components>");
    std::vector<int> f1, f2;
    for (const auto& t : kv.values("f1")) f1.push_back(std::stoi(t));
    for (const auto& t : kv.values("f2")) f2.push_back(std::stoi(t));
    return ComponentPair(Alphabet(static_cast<int>(kv.integer("s_size"))), std::move(f1),
                         std::move(f2), kv.number("epsilon"));
}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& originName) {
    KeyValueFile kv;
    kv.origin_ = originName;
    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        Entry e;
        e.line = lineNo;
        std::string tok;
        while (ls >> tok) e.values.push_back(tok);
        if (kv.entries_.count(key))
            throw ParseError(originName + ":" + std::to_string(lineNo) + ": duplicate key '" +
                             key + "'");
        kv.entries_.emplace(std::move(key), std::move(e));
    }
    return kv;
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

const std::vector<std::string>& KeyValueFile::values(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(origin_ + ": missing key '" + key + "'");
    return it->second.values;
}

std::string KeyValueFile::str(const std::string& key) const {
    const auto& v = values(key);
    if (v.size() != 1)
        throw ParseError(origin_ + ":" + std::to_string(line_of(key)) + ": key '" + key +
                         "' expects one value");
    return v[0];
}

std::string KeyValueFile::str_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
}

double KeyValueFile::number(const std::string& key) const {
    return parse_doubles({str(key)}, origin_ + ":" + std::to_string(line_of(key)))[0];
}

double KeyValueFile::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long long KeyValueFile::integer(const std::string& key) const {
    const double v = number(key);
    return static_cast<long long>(v);
}

long long KeyValueFile::integer_or(const std::string& key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
}

std::vector<double> KeyValueFile::numbers(const std::string& key) const {
    return parse_doubles(values(key), origin_ + ":" + std::to_string(line_of(key)));
}

int KeyValueFile::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

namespace {

DistributedSource parse_boho_builtin(const std::string& spec) {
    // boho:p=...,eps=...
    double p = -1.0, eps = -1.0;
    std::string rest = spec.substr(5);
    std::istringstream is(rest);
    std::string field;
    while (std::getline(is, field, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("boho source: expected key=value, got '" + field + "'");
        const std::string key = field.substr(0, eq);
        const double val = parse_doubles({field.substr(eq + 1)}, "boho source")[0];
        if (key == "p")
            p = val;
        else if (key == "eps")
            eps = val;
        else
            throw ParseError("boho source: unknown field '" + key + "'");
    }
    if (p < 0.0 || eps < 0.0) throw ParseError("boho source: both p and eps are required");
    return boho_source(p, eps);
}

}  // namespace

DistributedSource parse_source(const std::string& spec) {
    if (spec.rfind("boho:", 0) == 0) return parse_boho_builtin(spec);
    const std::string text = read_file(spec);
    const KeyValueFile kv = KeyValueFile::parse(text, spec);
    const int n1 = static_cast<int>(kv.integer("x1_size"));
    const int n2 = static_cast<int>(kv.integer("x2_size"));
    JointDist pmf({Alphabet(n1), Alphabet(n2)}, kv.numbers("pmf"));
    return DistributedSource(Alphabet(n1), Alphabet(n2), std::move(pmf), kv.numbers("d1"),
                             kv.numbers("d2"));
}

SourceWithSideInfo parse_source_si(const std::string& text, const std::string& originName) {
    const KeyValueFile kv = KeyValueFile::parse(text, originName);
    const int n1 = static_cast<int>(kv.integer("x1_size"));
    const int n2 = static_cast<int>(kv.integer("x2_size"));
    const int m1 = static_cast<int>(kv.integer("y1_size"));
    const int m2 = static_cast<int>(kv.integer("y2_size"));
    JointDist pmf({Alphabet(n1), Alphabet(n2), Alphabet(m1), Alphabet(m2)}, kv.numbers("pmf"));
    return SourceWithSideInfo(Alphabet(n1), Alphabet(n2), Alphabet(m1), Alphabet(m2),
                              std::move(pmf), kv.numbers("d1"), kv.numbers("d2"));
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write file: " + path);
    f << content;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string Manifest::to_text() const {
    std::ostringstream os;
    os << "manifest rdlab\n";
    os << "version " << version << "\n";
    os << "command " << command << "\n";
    os << "seed " << seed << "\n";
    if (!timestamp.empty()) os << "timestamp " << timestamp << "\n";
    for (const auto& [k, v] : config) os << "config." << k << ' ' << v << "\n";
    for (const auto& [k, v] : inputDigests) os << "input." << k << ".digest fnv1a:" << v << "\n";
    return os.str();
}

std::string region_csv(const RegionRun& run, const std::string& scheme) {
    std::ostringstream os;
    os << "r1_bits,r2_bits,d1,d2,scheme,n,tau,provenance_id\n";
    for (const auto& pt : run.boundary.points) {
        const auto& pr = run.prov.at(static_cast<std::size_t>(pt.provenanceId));
        os << fmt17(pt.r1) << ',' << fmt17(pt.r2) << ',' << fmt17(run.boundary.fixedD1) << ','
           << fmt17(run.boundary.fixedD2) << ',' << scheme << ',' << pr.n << ',' << fmt17(pr.tau)
           << ',' << pt.provenanceId << "\n";
    }
    return os.str();
}

std::string region_prov_text(const RegionRun& run) {
    std::ostringstream os;
    for (const auto& pt : run.boundary.points) {
        const auto& pr = run.prov.at(static_cast<std::size_t>(pt.provenanceId));
        os << "prov " << pt.provenanceId << " scheme " << pr.scheme << " eps " << fmt17(pr.epsilon)
           << " n " << pr.n << " tau " << fmt17(pr.tau) << " spec_index " << pr.specIndex << "\n";
    }
    return os.str();
}

std::string boho_prov_text(const std::vector<std::pair<double, BohoSweep>>& curves) {
    std::ostringstream os;
    for (const auto& [eps, sweep] : curves) {
        for (const auto& pt : sweep.boundary.points) {
            const auto& pr = sweep.prov.at(static_cast<std::size_t>(pt.provenanceId));
            os << "prov " << pt.provenanceId << " eps " << fmt17(eps) << " delta "
               << fmt17(pr.delta) << " delta1 " << fmt17(pr.delta1) << " n " << pr.n << " tau "
               << fmt17(pr.tau) << "\n";
        }
    }
    return os.str();
}

std::string boho_csv(const std::vector<std::pair<double, BohoSweep>>& curves) {
    std::ostringstream os;
    os << "r1_bits,r2_bits,d1,d2,scheme,n,tau,provenance_id,eps,delta,delta1\n";
    for (const auto& [eps, sweep] : curves) {
        const std::string scheme = eps == 0.0 ? "boho-cc" : "boho-flmc";
        for (const auto& pt : sweep.boundary.points) {
            const auto& pr = sweep.prov.at(static_cast<std::size_t>(pt.provenanceId));
            os << fmt17(pt.r1) << ',' << fmt17(pt.r2) << ",0," << fmt17(sweep.boundary.fixedD2)
               << ',' << scheme << ',' << pr.n << ',' << fmt17(pr.tau) << ',' << pt.provenanceId
               << ',' << fmt17(eps) << ',' << fmt17(pr.delta) << ',' << fmt17(pr.delta1) << "\n";
        }
    }
    return os.str();
}

}  // namespace io
}  // namespace rdlab
