// Test-only oracle: a direct transcription of the classic public-domain
// reference stemmer (the buffer/index machine with its length-prefixed
// suffix strings). Deliberately kept in the original's shape so it shares
// no structure with the library implementation it cross-checks.
#pragma once

#include <cstring>
#include <string>

namespace porter_oracle {

namespace detail {

struct Machine {
    char b[256];
    int k = 0, k0 = 0, j = 0;

    bool cons(int i) {
        switch (b[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return (i == k0) ? true : !cons(i - 1);
            default: return true;
        }
    }

    int m() {
        int n = 0;
        int i = k0;
        while (true) {
            if (i > j) return n;
            if (!cons(i)) break;
            i++;
        }
        i++;
        while (true) {
            while (true) {
                if (i > j) return n;
                if (cons(i)) break;
                i++;
            }
            i++;
            n++;
            while (true) {
                if (i > j) return n;
                if (!cons(i)) break;
                i++;
            }
            i++;
        }
    }

    bool vowelinstem() {
        for (int i = k0; i <= j; i++)
            if (!cons(i)) return true;
        return false;
    }

    bool doublec(int jj) {
        if (jj < k0 + 1) return false;
        if (b[jj] != b[jj - 1]) return false;
        return cons(jj);
    }

    bool cvc(int i) {
        if (i < k0 + 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b[i];
        if (ch == 'w' || ch == 'x' || ch == 'y') return false;
        return true;
    }

    bool ends(const char* s) {
        int length = s[0];
        if (s[length] != b[k]) return false;
        if (length > k - k0 + 1) return false;
        if (std::memcmp(b + k - length + 1, s + 1, static_cast<std::size_t>(length)) != 0)
            return false;
        j = k - length;
        return true;
    }

    void setto(const char* s) {
        int length = s[0];
        std::memmove(b + j + 1, s + 1, static_cast<std::size_t>(length));
        k = j + length;
    }

    void r(const char* s) {
        if (m() > 0) setto(s);
    }

    void step1ab() {
        if (b[k] == 's') {
            if (ends("\x04" "sses")) k -= 2;
            else if (ends("\x03" "ies")) setto("\x01" "i");
            else if (b[k - 1] != 's') k--;
        }
        if (ends("\x03" "eed")) {
            if (m() > 0) k--;
        } else if ((ends("\x02" "ed") || ends("\x03" "ing")) && vowelinstem()) {
            k = j;
            if (ends("\x02" "at")) setto("\x03" "ate");
            else if (ends("\x02" "bl")) setto("\x03" "ble");
            else if (ends("\x02" "iz")) setto("\x03" "ize");
            else if (doublec(k)) {
                k--;
                int ch = b[k];
                if (ch == 'l' || ch == 's' || ch == 'z') k++;
            } else if (m() == 1 && cvc(k)) {
                setto("\x01" "e");
            }
        }
    }

    void step1c() {
        if (ends("\x01" "y") && vowelinstem()) b[k] = 'i';
    }

    void step2() {
        if (k < k0 + 1) return;  // b[k-1] must exist; no rule can match anyway
        switch (b[k - 1]) {
            case 'a':
                if (ends("\x07" "ational")) { r("\x03" "ate"); break; }
                if (ends("\x06" "tional")) { r("\x04" "tion"); break; }
                break;
            case 'c':
                if (ends("\x04" "enci")) { r("\x04" "ence"); break; }
                if (ends("\x04" "anci")) { r("\x04" "ance"); break; }
                break;
            case 'e':
                if (ends("\x04" "izer")) { r("\x03" "ize"); break; }
                break;
            case 'l':
                if (ends("\x03" "bli")) { r("\x03" "ble"); break; }
                if (ends("\x04" "alli")) { r("\x02" "al"); break; }
                if (ends("\x05" "entli")) { r("\x03" "ent"); break; }
                if (ends("\x03" "eli")) { r("\x01" "e"); break; }
                if (ends("\x05" "ousli")) { r("\x03" "ous"); break; }
                break;
            case 'o':
                if (ends("\x07" "ization")) { r("\x03" "ize"); break; }
                if (ends("\x05" "ation")) { r("\x03" "ate"); break; }
                if (ends("\x04" "ator")) { r("\x03" "ate"); break; }
                break;
            case 's':
                if (ends("\x05" "alism")) { r("\x02" "al"); break; }
                if (ends("\x07" "iveness")) { r("\x03" "ive"); break; }
                if (ends("\x07" "fulness")) { r("\x03" "ful"); break; }
                if (ends("\x07" "ousness")) { r("\x03" "ous"); break; }
                break;
            case 't':
                if (ends("\x05" "aliti")) { r("\x02" "al"); break; }
                if (ends("\x05" "iviti")) { r("\x03" "ive"); break; }
                if (ends("\x06" "biliti")) { r("\x03" "ble"); break; }
                break;
            case 'g':
                if (ends("\x04" "logi")) { r("\x03" "log"); break; }
                break;
        }
    }

    void step3() {
        switch (b[k]) {
            case 'e':
                if (ends("\x05" "icate")) { r("\x02" "ic"); break; }
                if (ends("\x05" "ative")) { r("\x00" ""); break; }
                if (ends("\x05" "alize")) { r("\x02" "al"); break; }
                break;
            case 'i':
                if (ends("\x05" "iciti")) { r("\x02" "ic"); break; }
                break;
            case 'l':
                if (ends("\x04" "ical")) { r("\x02" "ic"); break; }
                if (ends("\x03" "ful")) { r("\x00" ""); break; }
                break;
            case 's':
                if (ends("\x04" "ness")) { r("\x00" ""); break; }
                break;
        }
    }

    void step4() {
        if (k < k0 + 1) return;  // b[k-1] must exist; no rule can match anyway
        switch (b[k - 1]) {
            case 'a':
                if (ends("\x02" "al")) break;
                return;
            case 'c':
                if (ends("\x04" "ance")) break;
                if (ends("\x04" "ence")) break;
                return;
            case 'e':
                if (ends("\x02" "er")) break;
                return;
            case 'i':
                if (ends("\x02" "ic")) break;
                return;
            case 'l':
                if (ends("\x04" "able")) break;
                if (ends("\x04" "ible")) break;
                return;
            case 'n':
                if (ends("\x03" "ant")) break;
                if (ends("\x05" "ement")) break;
                if (ends("\x04" "ment")) break;
                if (ends("\x03" "ent")) break;
                return;
            case 'o':
                if (ends("\x03" "ion") && (b[j] == 's' || b[j] == 't')) break;
                if (ends("\x02" "ou")) break;
                return;
            case 's':
                if (ends("\x03" "ism")) break;
                return;
            case 't':
                if (ends("\x03" "ate")) break;
                if (ends("\x03" "iti")) break;
                return;
            case 'u':
                if (ends("\x03" "ous")) break;
                return;
            case 'v':
                if (ends("\x03" "ive")) break;
                return;
            case 'z':
                if (ends("\x03" "ize")) break;
                return;
            default:
                return;
        }
        if (m() > 1) k = j;
    }

    void step5() {
        j = k;
        if (b[k] == 'e') {
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k - 1))) k--;
        }
        if (b[k] == 'l' && doublec(k) && m() > 1) k--;
    }
};

}  // namespace detail

inline std::string stem(const std::string& word) {
    if (word.size() >= 250) return word;
    detail::Machine machine;
    std::memcpy(machine.b, word.data(), word.size());
    machine.k0 = 0;
    machine.k = static_cast<int>(word.size()) - 1;
    if (machine.k <= machine.k0 + 1) return word;
    machine.step1ab();
    machine.step1c();
    machine.step2();
    machine.step3();
    machine.step4();
    machine.step5();
    return std::string(machine.b, static_cast<std::size_t>(machine.k + 1));
}

}  // namespace porter_oracle
