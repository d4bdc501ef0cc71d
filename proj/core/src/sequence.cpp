#include "tiescan/sequence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tiescan/errors.hpp"

namespace tiescan {

bool Observation::operator<(const Observation& other) const {
    if (rows != other.rows) return rows < other.rows;
    if (cols != other.cols) return cols < other.cols;
    return std::lexicographical_compare(data.begin(), data.end(), other.data.begin(),
                                        other.data.end());
}

Observation Observation::vector(std::vector<double> values) {
    Observation o;
    o.cols = static_cast<int>(values.size());
    o.rows = 1;
    o.data = std::move(values);
    return o;
}

Observation Observation::matrix(std::vector<double> values, int rows, int cols) {
    Observation o;
    o.rows = rows;
    o.cols = cols;
    o.data = std::move(values);
    return o;
}

void CategorizedSequence::validate() const {
    const int nn = n();
    const int kk = K();
    if (nn == 0) throw InputError("empty sequence");
    long long total = 0;
    for (int c : counts) {
        if (c < 1) throw InputError("category with zero multiplicity");
        total += c;
    }
    if (total != nn) throw InputError("category counts do not sum to sequence length");
    std::vector<int> seen(kk, 0);
    for (int lab : labels) {
        if (lab < 0 || lab >= kk) throw InputError("label out of range");
        seen[lab]++;
    }
    for (int k = 0; k < kk; ++k)
        if (seen[k] != counts[k]) throw InputError("label histogram does not match counts");
}

Categorized categorize(const ObservationSequence& observations) {
    if (observations.empty()) throw InputError("empty sequence");
    if (observations.size() < 2) throw InputError("sequence too short: need at least 2 observations");

    Categorized out;
    out.seq.labels.reserve(observations.size());
    std::map<Observation, int> index;
    for (const auto& obs : observations) {
        auto [it, inserted] = index.try_emplace(obs, static_cast<int>(out.representatives.size()));
        if (inserted) {
            out.representatives.push_back(obs);
            out.seq.counts.push_back(0);
        }
        out.seq.labels.push_back(it->second);
        out.seq.counts[it->second]++;
    }
    return out;
}

CategorizedSequence sequence_from_labels(std::vector<int> labels) {
    CategorizedSequence seq;
    seq.labels = std::move(labels);
    int K = 0;
    for (int lab : seq.labels) K = std::max(K, lab + 1);
    seq.counts.assign(K, 0);
    for (int lab : seq.labels) {
        if (lab < 0) throw InputError("negative label");
        seq.counts[lab]++;
    }
    seq.validate();
    return seq;
}

GroupSplit GroupSplit::at(int t) {
    GroupSplit s;
    s.kind = Kind::single;
    s.t = t;
    return s;
}

GroupSplit GroupSplit::interval(int t1, int t2) {
    GroupSplit s;
    s.kind = Kind::interval;
    s.t1 = t1;
    s.t2 = t2;
    return s;
}

int GroupSplit::group1_size() const {
    return kind == Kind::single ? t : t2 - t1;
}

bool GroupSplit::contains(int position_1based) const {
    if (kind == Kind::single) return position_1based <= t;
    return position_1based >= t1 && position_1based < t2;
}

void GroupSplit::validate(int n) const {
    if (kind == Kind::single) {
        if (t < 1 || t > n) throw InputError("split out of range");
    } else {
        if (t1 < 1 || t2 <= t1 || t2 > n + 1 || t2 - t1 > n)
            throw InputError("interval split out of range");
    }
}

std::pair<std::vector<int>, std::vector<int>>
contingency_at(const CategorizedSequence& seq, const GroupSplit& split) {
    split.validate(seq.n());
    std::vector<int> n1(seq.K(), 0);
    for (int i = 0; i < seq.n(); ++i)
        if (split.contains(i + 1)) n1[seq.labels[i]]++;
    std::vector<int> n2(seq.K());
    for (int k = 0; k < seq.K(); ++k) n2[k] = seq.counts[k] - n1[k];
    return {std::move(n1), std::move(n2)};
}

CategorizedSequence reverse(const CategorizedSequence& seq) {
    CategorizedSequence out = seq;
    std::reverse(out.labels.begin(), out.labels.end());
    return out;
}

} // namespace tiescan
