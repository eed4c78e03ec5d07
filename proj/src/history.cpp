#include "powsim/history.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace powsim {
namespace {

std::string join(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> split_ints(const std::string& s, int line) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::runtime_error("history log: bad tuple on line " + std::to_string(line));
        }
    }
    return out;
}

}  // namespace

LocalHistory localize(const History& h, int q, int k, int s) {
    if (q < 1 || q > h.length())
        throw std::out_of_range("localize: moment " + std::to_string(q) + " outside 1.." +
                                std::to_string(h.length()));
    LocalHistory lh;
    const int start = std::max(1, q - k);
    for (int i = start; i <= q; ++i) lh.past.push_back(h.at(i));
    const int stop = std::min(h.length(), q + s);
    for (int i = q + 1; i <= stop; ++i) lh.future.push_back(h.at(i));
    lh.absolute_origin = (start == 1);
    return lh;
}

std::string format_step(int t, const StepLetter& step) {
    std::string bits(step.correct.size(), '0');
    for (size_t i = 0; i < step.correct.size(); ++i)
        if (step.correct[i]) bits[i] = '1';
    return std::to_string(t) + "\t" + join(step.action) + "\t" + join(step.observation) + "\t" + bits;
}

void write_history(std::ostream& os, const History& h) {
    for (int t = 1; t <= h.length(); ++t) os << format_step(t, h.at(t)) << "\n";
}

History read_history(std::istream& is, const ScalarSignature& sig, const std::vector<MoveGroup>& groups) {
    History h;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string t_s, a_s, v_s, bits;
        if (!std::getline(ss, t_s, '\t') || !std::getline(ss, a_s, '\t') || !std::getline(ss, v_s, '\t') ||
            !std::getline(ss, bits, '\t'))
            throw std::runtime_error("history log: malformed line " + std::to_string(lineno));
        StepLetter step;
        step.action = split_ints(a_s, lineno);
        step.observation = split_ints(v_s, lineno);
        if (!sig.action_in_range(step.action) || !sig.obs_in_range(step.observation))
            throw std::runtime_error("history log: vector out of signature bounds on line " +
                                     std::to_string(lineno));
        if (bits.size() != static_cast<size_t>(sig.action_space_size()))
            throw std::runtime_error("history log: correctness bits have wrong length on line " +
                                     std::to_string(lineno));
        step.correct.resize(bits.size());
        for (size_t i = 0; i < bits.size(); ++i) step.correct[i] = bits[i] == '1';
        step.group_all_nobody = group_flags(sig, groups, step.correct);
        h.steps.push_back(std::move(step));
    }
    return h;
}

}  // namespace powsim
