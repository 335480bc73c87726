from cubefv.cli import main

main()
