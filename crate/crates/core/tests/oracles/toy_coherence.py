"""Independent evaluation of the toy-media coherence for one hand-built
image/text pair. Prints the values frozen into the Rust tests."""
import math

MASK = (1 << 64) - 1
SEED = 0x4D454C4954410001


def splitmix(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, z ^ (z >> 31)


state = SEED
M = []
for i in range(16):
    row = []
    for j in range(16):
        state, x = splitmix(state)
        row.append(2.0 * ((x >> 11) / 2.0**53) - 1.0)
    M.append(row)

# 4x4 image: left two columns pure yellow, right two columns pure blue,
# bottom-right pixel white.
W = H = 4
img = [[(1.0, 1.0, 0.0) if x < 2 else (0.0, 0.0, 1.0) for x in range(W)] for y in range(H)]
img[3][3] = (1.0, 1.0, 1.0)
lum = [[0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2] for p in row] for row in img]

grad = {}
for y in range(1, H - 1):
    for x in range(1, W - 1):
        gx = sum(k * lum[y + dy][x + 1] for dy, k in ((-1, 1), (0, 2), (1, 1))) - sum(
            k * lum[y + dy][x - 1] for dy, k in ((-1, 1), (0, 2), (1, 1)))
        gy = sum(k * lum[y + 1][x + dx] for dx, k in ((-1, 1), (0, 2), (1, 1))) - sum(
            k * lum[y - 1][x + dx] for dx, k in ((-1, 1), (0, 2), (1, 1)))
        grad[(x, y)] = math.hypot(gx, gy) / 4.0
tau = 0.25


def quad(x, y):
    return (1 if x >= W // 2 else 0) + (2 if y >= H // 2 else 0)


f = [0.0] * 16
for q in range(4):
    cells = [(x, y) for y in range(H) for x in range(W) if quad(x, y) == q]
    f[q] = sum(lum[y][x] for x, y in cells) / len(cells)
    inner = [c for c in grad if quad(*c) == q]
    f[4 + q] = sum(1 for c in inner if grad[c] > tau) / len(inner) if inner else 0.0
n = W * H
for c in range(3):
    f[8 + c] = sum(img[y][x][c] for y in range(H) for x in range(W)) / n
rg = [255 * p[0] - 255 * p[1] for row in img for p in row]
yb = [0.5 * (255 * p[0] + 255 * p[1]) - 255 * p[2] for row in img for p in row]
mrg, myb = sum(rg) / n, sum(yb) / n
srg = sum((v - mrg) ** 2 for v in rg) / n
syb = sum((v - myb) ** 2 for v in yb) / n
colour = math.sqrt(srg + syb) + 0.3 * math.sqrt(mrg**2 + myb**2)
f[11] = min(colour / 300.0, 1.0)
f[12] = sum(1 for g in grad.values() if g > tau) / len(grad)
flat = [l for row in lum for l in row]
ml = sum(flat) / n
f[13] = math.sqrt(sum((l - ml) ** 2 for l in flat) / n)
f[14] = sum(abs(lum[y][x + 1] - lum[y][x]) for y in range(H) for x in range(W - 1)) / ((W - 1) * H)
f[15] = sum(abs(lum[y + 1][x] - lum[y][x]) for y in range(H - 1) for x in range(W)) / (W * (H - 1))

# text: eight copies of token 12 (topic 3) plus token 40 (topic 10)
tokens = [12] * 8 + [40]
def p(k, t):
    return 0.2 if t // 4 == k else 0.2 / 60
lik = [math.prod(p(k, t) for t in tokens) for k in range(16)]
post = [l / sum(lik) for l in lik]

proj = [sum(M[i][j] * f[j] for j in range(16)) for i in range(16)]
dot = sum(a * b for a, b in zip(proj, post))
cos = dot / (math.sqrt(sum(a * a for a in proj)) * math.sqrt(sum(b * b for b in post)))
print("M[0][0..3] =", [repr(v) for v in M[0][:3]])
print("M[15][15] =", repr(M[15][15]))
print("features =", [repr(v) for v in f])
print("colourfulness =", repr(colour))
print("q =", repr((1 + cos) / 2))
