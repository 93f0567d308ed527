#include "phishembed/textprep.hpp"

#include <algorithm>

namespace phishembed {

namespace {

// Working buffer for one word. `end` is one past the last live character; the
// measure and vowel tests look at the prefix [0, stem_end).
class PorterWord {
public:
    explicit PorterWord(std::string_view w) : b_(w), end_(w.size()) {}

    std::string result() const { return b_.substr(0, end_); }

    void step1a() {
        if (ends("sses")) {
            end_ -= 2;
        } else if (ends("ies")) {
            set_to("i");
        } else if (end_ >= 2 && b_[end_ - 1] == 's' && b_[end_ - 2] != 's') {
            --end_;
        }
    }

    void step1b() {
        if (ends("eed")) {
            if (measure() > 0) --end_;
            return;
        }
        if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            end_ = stem_end_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_consonant(end_ - 1)) {
                const char c = b_[end_ - 1];
                if (c != 'l' && c != 's' && c != 'z') --end_;
            } else {
                stem_end_ = end_;
                if (measure() == 1 && cvc(end_ - 1)) set_to_append("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[end_ - 1] = 'i';
    }

    void step2() {
        static constexpr std::pair<std::string_view, std::string_view> rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        };
        replace_longest(rules, 0);
    }

    void step3() {
        static constexpr std::pair<std::string_view, std::string_view> rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        };
        replace_longest(rules, 0);
    }

    void step4() {
        static constexpr std::string_view suffixes[] = {
            "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
            "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
        };
        std::string_view best;
        for (auto s : suffixes)
            if (s.size() > best.size() && ends(s)) best = s;
        if (best.empty()) return;
        ends(best);
        if (best == "ion") {
            if (stem_end_ == 0 || (b_[stem_end_ - 1] != 's' && b_[stem_end_ - 1] != 't')) return;
        }
        if (measure() > 1) end_ = stem_end_;
    }

    void step5() {
        if (end_ > 0 && b_[end_ - 1] == 'e') {
            stem_end_ = end_ - 1;
            const int m = measure();
            if (m > 1 || (m == 1 && !cvc(end_ - 2))) --end_;
        }
        if (end_ > 1 && b_[end_ - 1] == 'l' && double_consonant(end_ - 1)) {
            stem_end_ = end_;
            if (measure() > 1) --end_;
        }
    }

private:
    bool consonant(std::size_t i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 ? true : !consonant(i - 1);
            default: return true;
        }
    }

    // Number of VC sequences in [0, stem_end_).
    int measure() const {
        int n = 0;
        std::size_t i = 0;
        const std::size_t j = stem_end_;
        while (i < j && consonant(i)) ++i;
        while (i < j) {
            while (i < j && !consonant(i)) ++i;
            if (i >= j) break;
            while (i < j && consonant(i)) ++i;
            ++n;
        }
        return n;
    }

    bool vowel_in_stem() const {
        for (std::size_t i = 0; i < stem_end_; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t i) const {
        return i >= 1 && b_[i] == b_[i - 1] && consonant(i);
    }

    // consonant-vowel-consonant ending at i, last not w/x/y.
    bool cvc(std::size_t i) const {
        if (i < 2 || !consonant(i) || consonant(i - 1) || !consonant(i - 2)) return false;
        const char c = b_[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    // On match, stem_end_ marks where the suffix starts.
    bool ends(std::string_view s) {
        if (s.size() > end_) return false;
        if (std::string_view(b_).substr(end_ - s.size(), s.size()) != s) return false;
        stem_end_ = end_ - s.size();
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(stem_end_, end_ - stem_end_, s);
        end_ = stem_end_ + s.size();
        b_.resize(end_);
    }

    void set_to_append(std::string_view s) {
        b_.resize(end_);
        b_ += s;
        end_ = b_.size();
    }

    template <std::size_t N>
    void replace_longest(const std::pair<std::string_view, std::string_view> (&rules)[N], int min_measure) {
        const std::pair<std::string_view, std::string_view>* best = nullptr;
        for (const auto& rule : rules)
            if ((!best || rule.first.size() > best->first.size()) && ends(rule.first)) best = &rule;
        if (!best) return;
        ends(best->first);
        if (measure() > min_measure) set_to(best->second);
    }

    std::string b_;
    std::size_t end_;
    std::size_t stem_end_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
        return std::string(word);

    PorterWord w(word);
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5();
    return w.result();
}

}  // namespace phishembed
