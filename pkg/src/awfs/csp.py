"""Tiny backtracking constraint solver with forward forcing.

Variables are ints 0..n-1 with ordered candidate lists.  Constraints:
  eq(i, j, fn)        val[j] == fn(val[i])        (forces j once i is known)
  tern(i, j, k, fn)   val[k] == fn(val[i], val[j]) (forces k once i, j known)
  pred(i, j, fn)      fn(val[i], val[j]) is true
Solutions are yielded in lexicographic order of candidate positions.
"""


class CSP:
    def __init__(self, candidates):
        self.cands = [list(c) for c in candidates]
        self.allowed = [set(c) for c in self.cands]
        self.n = len(self.cands)
        self.watch = [[] for _ in range(self.n)]

    def eq(self, i, j, fn):
        c = ("eq", i, j, fn)
        self.watch[i].append(c)
        self.watch[j].append(c)

    def tern(self, i, j, k, fn):
        c = ("tern", i, j, k, fn)
        for v in {i, j, k}:
            self.watch[v].append(c)

    def pred(self, i, j, fn):
        c = ("pred", i, j, fn)
        self.watch[i].append(c)
        if j != i:
            self.watch[j].append(c)

    def solutions(self):
        val = [None] * self.n
        if any(not c for c in self.cands):
            return

        def assign(v, x, trail):
            stack = [(v, x)]
            while stack:
                v, x = stack.pop()
                cur = val[v]
                if cur is not None:
                    if cur != x:
                        return False
                    continue
                if x not in self.allowed[v]:
                    return False
                val[v] = x
                trail.append(v)
                for c in self.watch[v]:
                    kind = c[0]
                    if kind == "eq":
                        _, i, j, fn = c
                        if val[i] is not None:
                            y = fn(val[i])
                            if y is None:
                                return False
                            if val[j] is None:
                                stack.append((j, y))
                            elif val[j] != y:
                                return False
                    elif kind == "tern":
                        _, i, j, k, fn = c
                        if val[i] is not None and val[j] is not None:
                            y = fn(val[i], val[j])
                            if y is None:
                                return False
                            if val[k] is None:
                                stack.append((k, y))
                            elif val[k] != y:
                                return False
                    else:
                        _, i, j, fn = c
                        if val[i] is not None and val[j] is not None and not fn(val[i], val[j]):
                            return False
            return True

        def undo(trail):
            for v in trail:
                val[v] = None

        # explicit stack instead of recursion: carriers can hold thousands of elements
        def gen():
            frames = [[0, None, None]]  # var position, candidate iterator, trail
            while frames:
                fr = frames[-1]
                pos = fr[0]
                while pos < self.n and val[pos] is not None and fr[1] is None:
                    pos += 1
                    fr[0] = pos
                if pos == self.n:
                    yield list(val)
                    frames.pop()
                    continue
                if fr[1] is None:
                    fr[1] = iter(self.cands[pos])
                if fr[2] is not None:
                    undo(fr[2])
                    fr[2] = None
                advanced = False
                for x in fr[1]:
                    trail = []
                    if assign(pos, x, trail):
                        fr[2] = trail
                        frames.append([pos + 1, None, None])
                        advanced = True
                        break
                    undo(trail)
                if not advanced:
                    frames.pop()

        yield from gen()

    def first(self):
        for s in self.solutions():
            return s
        return None
