from . import regenerate

for name in regenerate():
    print(name)
