from proxregio.main import main

raise SystemExit(main())
