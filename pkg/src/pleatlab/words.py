"""Words in free generators and their matrix evaluation.

A word is a string over generator letters, uppercase meaning inverse:
``"abAB"`` is a * b * a^-1 * b^-1.  Evaluation goes through the kernel's
``eval_word`` so the hot loop can run compiled.
"""

from pleatlab import kernel
from pleatlab.errors import PleatlabError


def word_inverse(word):
    return word[::-1].swapcase()


def free_reduce(word):
    out = []
    for ch in word:
        if out and out[-1] != ch and out[-1].lower() == ch.lower():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_conjugate(word, k):
    k %= max(len(word), 1)
    return word[k:] + word[:k]


class WordEvaluator:
    """Evaluates words over a fixed, ordered set of generator matrices."""

    def __init__(self, generators):
        """``generators``: dict letter (lowercase) -> 4-tuple matrix."""
        self.letters = "".join(generators)
        self._mats = tuple(tuple(map(complex, generators[ch])) for ch in self.letters)
        self._codes = {}
        for i, ch in enumerate(self.letters):
            self._codes[ch] = i + 1
            self._codes[ch.upper()] = -(i + 1)

    def codes(self, word):
        try:
            return tuple(self._codes[ch] for ch in word)
        except KeyError as exc:
            raise PleatlabError(f"unknown generator letter in {word!r}") from exc

    def matrix(self, word):
        return kernel.eval_word(self.codes(word), self._mats)

    def trace(self, word):
        m = self.matrix(word)
        return m[0] + m[3]

    def generator_matrix(self, letter):
        return self._mats[self.letters.index(letter)]


def random_reduced_word(rng, letters, min_len=1, max_len=12):
    """A nonempty freely reduced word, drawn with the given numpy RNG."""
    symbols = list(letters) + [ch.upper() for ch in letters]
    length = int(rng.integers(min_len, max_len + 1))
    while True:
        out = []
        for _ in range(length):
            choices = [
                s
                for s in symbols
                if not (out and s != out[-1] and s.lower() == out[-1].lower())
            ]
            out.append(choices[int(rng.integers(0, len(choices)))])
        word = "".join(out)
        if word:
            return word
